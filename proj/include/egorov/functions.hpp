#pragma once

#include <complex>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "egorov/domain.hpp"
#include "egorov/multi_index.hpp"
#include "egorov/polynomial.hpp"

namespace egorov {

using Complex = std::complex<double>;

/// Smooth function of one real variable together with all its derivatives.
struct Smooth1D {
  std::string name;
  /// (n, t) -> f^(n)(t)
  std::function<double(unsigned, double)> d;
  /// Closed support (whole line unless compactly supported).
  Interval support;
  /// Points where quadrature panels should be cut.
  std::vector<double> breaks;

  [[nodiscard]] double operator()(double t) const { return d(0, t); }

  static Smooth1D constant(double c);
  /// sin(a t + b)
  static Smooth1D sin(double a = 1.0, double b = 0.0);
  static Smooth1D cos(double a = 1.0, double b = 0.0);
  /// exp(a t + b)
  static Smooth1D exp(double a = 1.0, double b = 0.0);
  static Smooth1D polynomial(const std::vector<double>& coeffs);
  /// w((t - c) / s), supported in [c - s, c + s].
  static Smooth1D bump(double c, double s);
  static Smooth1D scaled(double k, const Smooth1D& f);
  static Smooth1D product(const Smooth1D& f, const Smooth1D& g);
};

/// Smooth function on R^d with derivative evaluators; the leaves of sigma.
struct StandardFunction {
  std::size_t dim = 1;
  std::string name;
  /// (alpha, x) -> d^alpha f(x)
  std::function<double(const MultiIndex&, std::span<const double>)> d;
  /// Present for polynomial functions; derivatives are then symbolic.
  std::optional<Polynomial> poly;
  /// Present for separable functions prod_i g_i(x_i).
  std::vector<Smooth1D> factors;

  [[nodiscard]] double operator()(std::span<const double> x) const { return d(MultiIndex(dim), x); }

  static StandardFunction polynomial(Polynomial p);
  static StandardFunction constant(std::size_t dim, double c);
  static StandardFunction coordinate(std::size_t dim, std::size_t axis);
  /// prod_i g_i(x_i)
  static StandardFunction separable(std::vector<Smooth1D> factors);
  /// g(x_axis), constant in the other coordinates.
  static StandardFunction on_axis(std::size_t dim, std::size_t axis, const Smooth1D& g);
  static StandardFunction product(const StandardFunction& f, const StandardFunction& g);
  static StandardFunction sum(const StandardFunction& f, const StandardFunction& g);
};

/// Entire function g applied pointwise to a generalized function, with all
/// derivatives g^(n).
struct UnaryFunction {
  std::string name;
  std::function<Complex(unsigned, Complex)> d;

  static UnaryFunction exp();
  static UnaryFunction sin();
  static UnaryFunction cos();
  /// y^k
  static UnaryFunction power(unsigned k);
};

enum class DensityClass { continuous, smooth, locally_integrable, polynomial };
const char* to_string(DensityClass c);
DensityClass density_class_from_string(const std::string& s);

/// Locally integrable function used as the base of a regular distribution.
struct Density {
  std::size_t dim = 1;
  std::string name;
  DensityClass cls = DensityClass::continuous;
  std::function<Complex(std::span<const double>)> value;
  /// Per-axis coordinates of jumps or kinks (panel cuts for quadrature).
  std::vector<std::vector<double>> breaks;
  std::optional<Polynomial> poly;

  [[nodiscard]] Complex operator()(std::span<const double> x) const { return value(x); }

  static Density polynomial(Polynomial p);
  static Density from_standard(const StandardFunction& f);
  /// H(x_axis - a)
  static Density heaviside(std::size_t dim = 1, std::size_t axis = 0, double a = 0.0);
  static Density custom(std::string name, DensityClass cls, std::size_t dim,
                        std::function<Complex(std::span<const double>)> value,
                        std::vector<std::vector<double>> breaks = {});
  /// Pointwise product with a smooth function.
  static Density times(const StandardFunction& f, const Density& g);
};

void to_json(nlohmann::json& j, const Smooth1D& f);
void to_json(nlohmann::json& j, const StandardFunction& f);
void to_json(nlohmann::json& j, const Density& g);

}  // namespace egorov
