#pragma once

#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "egorov/dist.hpp"
#include "egorov/genfun.hpp"

namespace egorov {

enum class Regularity { certified_member, refuted, inconclusive };
const char* to_string(Regularity r);

/// Fitted growth exponent n with |d^alpha f(xi)| ~ rho^{-n}. +inf marks
/// non-finite values, -inf an identically vanishing derivative.
struct GrowthSample {
  std::vector<double> base;
  std::vector<double> offset_coeff;
  MultiIndex alpha;
  double exponent = 0.0;
};

struct RegularityReport {
  Regularity verdict = Regularity::inconclusive;
  /// Syntactic derivation for certified members, reason otherwise.
  std::string certificate;
  /// Certified bound |f| <= C rho^{-bound_exponent}.
  double bound_exponent = 0.0;
  std::vector<GrowthSample> growth;
  /// Index into growth of the refuting point's samples.
  std::vector<std::size_t> refutation_trace;
};

/// Syntactic walk: standard and scalar leaves under sums, products and scalar
/// multiples certify membership. Anything else is inconclusive.
RegularityReport certify_member(const GenFunc& f);

struct RefuteOptions {
  /// Minimal increase of the growth exponent per derivative order.
  double slope_threshold = 0.5;
  /// Offsets c rho added to every base point (per axis).
  std::vector<double> offsets{0.0, 0.3, -0.55};
  QuadConfig quad{};
  Exec exec = Exec::parallel;
};

/// rho_j = 2^{-j}, j = 3..8.
std::vector<double> regularity_rho_grid();

/// Growth scan over the sampled points, the feature points of f and offsets
/// around them. Refuted when at some point the largest exponent over |alpha| = k
/// grows by at least the threshold at every order in the top half of 1..alpha_max.
/// Throws std::invalid_argument when alpha_max < 2.
RegularityReport refute_member(const GenFunc& f, unsigned alpha_max, const std::vector<std::vector<double>>& pts,
                               const std::vector<double>& rho_grid, const RefuteOptions& opts = {});

enum class Membership { member, not_member, undetermined };
const char* to_string(Membership m);

struct CatalogueRow {
  std::string name;
  Regularity refutation = Regularity::inconclusive;
  Regularity certification = Regularity::inconclusive;
  /// Whether iota(T) equals sigma(f) for a smooth density f (false otherwise).
  bool equals_certified = false;
  /// Whether iota(T) is associated with sigma(f) (false when no f).
  bool associated_certified = false;
  Membership membership = Membership::undetermined;
};

struct CatalogueOptions {
  unsigned alpha_max = 6;
  double equality_tol = 1e-12;
  double association_tol = 1e-6;
};

/// Rows for delta, d delta, H, S(sin), S(P) on (-2, 2).
std::vector<CatalogueRow> regular_catalogue(KernelPtr k, const CatalogueOptions& opts = {});
/// The verdict pattern the catalogue must reproduce.
std::vector<CatalogueRow> expected_catalogue();
bool catalogue_matches(const std::vector<CatalogueRow>& got, const std::vector<CatalogueRow>& want);

void to_json(nlohmann::json& j, const RegularityReport& r);
void to_json(nlohmann::json& j, const CatalogueRow& r);

}  // namespace egorov
