#pragma once

#include <map>
#include <span>
#include <string>

#include <nlohmann/json_fwd.hpp>

#include "egorov/multi_index.hpp"

namespace egorov {

/// Multivariate polynomial with exact (stored, not re-derived) real
/// coefficients keyed by exponent multi-index.
class Polynomial {
 public:
  explicit Polynomial(std::size_t dim = 1) : dim_(dim) {}
  Polynomial(std::size_t dim, std::map<MultiIndex, double> terms);

  /// One-dimensional polynomial from ascending coefficients.
  static Polynomial univariate(const std::vector<double>& coeffs);
  static Polynomial constant(std::size_t dim, double c);
  /// x_axis
  static Polynomial coordinate(std::size_t dim, std::size_t axis);

  [[nodiscard]] std::size_t dim() const noexcept { return dim_; }
  [[nodiscard]] const std::map<MultiIndex, double>& terms() const noexcept { return terms_; }
  [[nodiscard]] bool is_zero() const noexcept { return terms_.empty(); }
  /// Total degree; -1 for the zero polynomial.
  [[nodiscard]] int degree() const;

  [[nodiscard]] double operator()(std::span<const double> x) const;
  [[nodiscard]] Polynomial derive(const MultiIndex& alpha) const;

  friend Polynomial operator+(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator-(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator*(double c, const Polynomial& a);
  friend bool operator==(const Polynomial&, const Polynomial&) = default;

 private:
  void prune();

  std::size_t dim_;
  std::map<MultiIndex, double> terms_;
};

std::string to_string(const Polynomial& p);

/// {"dim": d, "terms": [[[a_1..a_d], c], ...]}
void to_json(nlohmann::json& j, const Polynomial& p);
Polynomial polynomial_from_json(const nlohmann::json& j);

}  // namespace egorov
