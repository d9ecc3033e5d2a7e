#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "egorov/genfun.hpp"

namespace egorov {

/// Smooth compactly supported test function.
struct TestFunction {
  std::string id;
  StandardFunction phi;
  Box support;
};

/// Normalized bump w((x - c)/s) / (s int w) on the line.
TestFunction bump_test_function(double c, double s);
/// Bump times x^k (not normalized).
TestFunction bump_monomial_test_function(double c, double s, unsigned k);

/// The built-in suite: nine normalized bumps of varied centers and scales
/// plus bump(0.1, 0.8) x {1, x, x^2}, all supported in [-1, 1]. In d > 1 the
/// entries are tensor products of the 1-D entries (axis i uses entry k + i).
std::vector<TestFunction> default_test_suite(std::size_t dim = 1);

/// d^alpha phi as a test function (support unchanged).
TestFunction derive(const TestFunction& phi, const MultiIndex& alpha);
/// x -> phi(x - shift).
TestFunction translate(const TestFunction& phi, const std::vector<double>& shift);

struct AsymptoticFit {
  std::vector<std::pair<double, Complex>> samples;
  std::vector<Rational> dictionary;
  /// One coefficient per dictionary exponent.
  std::vector<Complex> coefficients;
  /// Coefficients with negligible terms pruned.
  AsymptoticScalar fitted_terms;
  /// max |residual| / max |sample|
  double residual = 0.0;
  bool reliable = false;
  /// Slope of log|v| against log rho (the effective leading exponent).
  double slope = 0.0;

  /// Fitted coefficient at exponent e (0 if e is not in the dictionary).
  [[nodiscard]] Complex coefficient(const Rational& e) const;
};

struct FitOptions {
  double residual_threshold = 1e-6;
  /// Terms whose largest contribution over the samples is below this
  /// fraction of max |sample| are dropped from fitted_terms.
  double prune_fraction = 1e-10;
};

/// Least squares against {rho^e : e in dictionary} with column scaling.
/// Requires at least two more samples than exponents. Rank deficiency or a
/// residual above the threshold marks the fit unreliable.
AsymptoticFit fit_asymptotics(const std::vector<std::pair<double, Complex>>& samples,
                              const std::vector<Rational>& dictionary, const FitOptions& opts = {});

/// Integer exponents lower..upper, cut so that at least n_samples - 2 >= size.
std::vector<Rational> exponent_dictionary(int lower, int upper, std::size_t n_samples);

/// rho_j = 2^{-j} for j = j_min..j_max.
std::vector<double> dyadic_rho_grid(int j_min = 8, int j_max = 16);

struct PairOptions {
  unsigned nodes_per_panel = 64;
  /// Equal panels per axis across the support of phi, before feature cuts.
  unsigned panels = 8;
  QuadConfig quad{};
  /// Overrides the default dictionary {-d p, ..., q + 2}.
  std::optional<std::vector<Rational>> dictionary;
  FitOptions fit{};
  Exec exec = Exec::parallel;
};

/// int f(x; rho) phi(x) dx for each rho, by composite Gauss-Legendre on the
/// support of phi with panels cut at the features of f.
std::vector<Complex> pair_values(const GenFunc& f, const TestFunction& phi, const std::vector<double>& rho_grid,
                                 const PairOptions& opts = {});
/// Values of pair for every (phi, rho), row-major [phi][rho].
std::vector<Complex> pair_grid(const GenFunc& f, const std::vector<TestFunction>& suite,
                               const std::vector<double>& rho_grid, const PairOptions& opts = {});

/// Pairing sweep followed by an asymptotic fit. Throws std::invalid_argument
/// unless supp phi sits inside the domain with margin above max rho.
AsymptoticFit pair(const GenFunc& f, const TestFunction& phi, const std::vector<double>& rho_grid,
                   const PairOptions& opts = {});

/// Integral over a compact region inside the domain, then fit.
AsymptoticFit integrate_region(const GenFunc& f, const Region& X, const std::vector<double>& rho_grid,
                               const PairOptions& opts = {});

enum class Association { associated, not_associated, indeterminate };
const char* to_string(Association a);

struct AssociationReport {
  Association verdict = Association::indeterminate;
  struct PerPhi {
    std::string phi_id;
    Association verdict = Association::indeterminate;
    double max_abs_value = 0.0;
    /// Largest |c_e| over e <= 0 (0 when the values were already below tol).
    double max_nonpositive_coeff = 0.0;
    Complex standard_part{0.0, 0.0};
    double residual = 0.0;
  };
  std::vector<PerPhi> per_phi;
};

/// f and g are associated on the suite when every pairing of f - g has
/// vanishing coefficients at all exponents <= 0. Unreliable fits give
/// indeterminate; any clear nonzero coefficient gives not_associated.
AssociationReport associated(const GenFunc& f, const GenFunc& g, const std::vector<TestFunction>& suite,
                             const std::vector<double>& rho_grid, double tol, const PairOptions& opts = {});

void to_json(nlohmann::json& j, const AsymptoticFit& f);
void to_json(nlohmann::json& j, const AssociationReport& r);

}  // namespace egorov
