#include "egorov/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <stdexcept>

#include <boost/math/special_functions/legendre.hpp>

namespace egorov::quad {

namespace {

Rule make_rule(std::size_t n) {
  const auto zeros = boost::math::legendre_p_zeros<double>(static_cast<int>(n));
  Rule r;
  auto add = [&](double x) {
    const double dp = boost::math::legendre_p_prime<double>(static_cast<int>(n), x);
    r.nodes.push_back(x);
    r.weights.push_back(2.0 / ((1.0 - x * x) * dp * dp));
  };
  // legendre_p_zeros returns the nonnegative zeros in increasing order.
  for (auto it = zeros.rbegin(); it != zeros.rend(); ++it)
    if (*it != 0.0) add(-*it);
  for (double z : zeros) add(z);
  return r;
}

}  // namespace

const Rule& gauss_legendre(std::size_t n) {
  if (n == 0) throw std::invalid_argument("Gauss-Legendre rule needs at least one node");
  static std::mutex mu;
  static std::map<std::size_t, std::unique_ptr<Rule>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto& slot = cache[n];
  if (!slot) slot = std::make_unique<Rule>(make_rule(n));
  return *slot;
}

Nodes1D composite(double lo, double hi, std::vector<double> breaks, std::size_t n) {
  Nodes1D out;
  if (!(hi > lo)) return out;
  breaks.push_back(lo);
  breaks.push_back(hi);
  std::sort(breaks.begin(), breaks.end());
  const double tiny = 1e-14 * std::max({1.0, std::abs(lo), std::abs(hi)});
  std::vector<double> cuts;
  for (double b : breaks) {
    if (b < lo || b > hi) continue;
    if (cuts.empty() || b - cuts.back() > tiny) cuts.push_back(b);
  }
  cuts.back() = hi;
  const Rule& rule = gauss_legendre(n);
  out.x.reserve((cuts.size() - 1) * n);
  out.w.reserve((cuts.size() - 1) * n);
  for (std::size_t p = 0; p + 1 < cuts.size(); ++p) {
    const double a = cuts[p], b = cuts[p + 1];
    const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
    for (std::size_t k = 0; k < rule.nodes.size(); ++k) {
      out.x.push_back(mid + half * rule.nodes[k]);
      out.w.push_back(half * rule.weights[k]);
    }
  }
  return out;
}

}  // namespace egorov::quad
