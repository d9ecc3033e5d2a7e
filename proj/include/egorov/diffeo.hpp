#pragma once

#include <functional>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace egorov {

struct UnsupportedTerm : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// Diffeomorphism theta: X -> Y between open subsets of R^d.
struct Diffeo {
  using Map = std::function<std::vector<double>(std::span<const double>)>;

  struct Affine {
    std::vector<double> A;      // row-major d x d
    std::vector<double> b;
    std::vector<double> A_inv;  // row-major d x d
  };

  std::size_t dim = 1;
  std::string name;
  Map forward;
  Map inverse;
  /// det D theta(x)
  std::function<double(std::span<const double>)> jacobian_det;
  std::optional<Affine> affine;
  /// Per-axis monotone coordinate maps, when theta acts axis by axis
  /// (diagonal affine maps, or any one-dimensional diffeo). Used to carry
  /// quadrature breakpoints through the map.
  std::vector<std::function<double(double)>> axis_forward;

  /// theta(x) = A x + b; A must be invertible.
  static Diffeo make_affine(std::vector<double> A, std::vector<double> b);
  static Diffeo identity(std::size_t dim);
  /// theta(x) = a x + b on the line.
  static Diffeo line(double a, double b);
  /// General monotone diffeo of the line.
  static Diffeo general_1d(std::string name, std::function<double(double)> fwd, std::function<double(double)> inv,
                           std::function<double(double)> derivative);

  [[nodiscard]] double A(std::size_t i, std::size_t j) const { return affine->A[i * dim + j]; }
  [[nodiscard]] double A_inv(std::size_t i, std::size_t j) const { return affine->A_inv[i * dim + j]; }
  [[nodiscard]] bool axis_wise() const noexcept { return axis_forward.size() == dim; }
};

}  // namespace egorov
