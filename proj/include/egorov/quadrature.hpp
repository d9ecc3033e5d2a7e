#pragma once

#include <cstddef>
#include <vector>

namespace egorov::quad {

/// Nodes and weights on [-1, 1].
struct Rule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// n-point Gauss-Legendre rule. Rules are computed once and cached; the
/// returned reference stays valid for the lifetime of the program.
const Rule& gauss_legendre(std::size_t n);

/// Flattened 1-D composite rule.
struct Nodes1D {
  std::vector<double> x;
  std::vector<double> w;
};

/// Composite rule on [lo, hi]: the interval is cut at every break strictly
/// inside it, and each piece gets the n-point Gauss-Legendre rule.
Nodes1D composite(double lo, double hi, std::vector<double> breaks, std::size_t n);

}  // namespace egorov::quad
