#pragma once

#include <cstdint>
#include <limits>
#include <span>
#include <stdexcept>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "egorov/scalars.hpp"

namespace egorov {

// All distances in this library use the l-infinity norm, which keeps box
// arithmetic exact: boundary distance, the clipping ball of the shrunken
// sets, and the support radius of the kernel.

inline constexpr double kInf = std::numeric_limits<double>::infinity();

struct OutsideDomain : std::domain_error {
  using std::domain_error::domain_error;
};
struct DimensionMismatch : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};
struct EmptyDomain : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct Interval {
  double lo = -kInf;
  double hi = kInf;

  [[nodiscard]] bool empty() const noexcept { return !(lo < hi); }
  [[nodiscard]] bool bounded() const noexcept { return lo > -kInf && hi < kInf; }
  [[nodiscard]] double width() const noexcept { return hi - lo; }
  friend bool operator==(const Interval&, const Interval&) = default;
};

/// Axis-aligned box, one interval per axis. Whether it is open or closed is
/// decided by the container (Domain boxes are open, Region boxes closed).
struct Box {
  std::vector<Interval> axes;

  [[nodiscard]] std::size_t dim() const noexcept { return axes.size(); }
  [[nodiscard]] bool empty() const noexcept;
  [[nodiscard]] bool bounded() const noexcept;
  [[nodiscard]] bool contains_open(std::span<const double> x) const;
  [[nodiscard]] bool contains_closed(std::span<const double> x) const;
  [[nodiscard]] double volume() const;
  friend bool operator==(const Box&, const Box&) = default;
};

/// Finite union of closed boxes; the integration regions Omega_eps and the
/// windows of region integrals. May be empty.
struct Region {
  std::size_t dim = 1;
  std::vector<Box> boxes;

  [[nodiscard]] bool empty() const noexcept { return boxes.empty(); }
  [[nodiscard]] bool contains(std::span<const double> x) const;
  friend bool operator==(const Region&, const Region&) = default;
};

/// Open set as a finite union of pairwise disjoint open boxes.
///
/// The empty domain is representable (it is what over-shrinking or an empty
/// restriction target produces) but every operation that needs a point of the
/// domain rejects it.
class Domain {
 public:
  /// R^d.
  static Domain whole(std::size_t dim);
  static Domain empty(std::size_t dim);
  /// Open interval (lo, hi) in one dimension.
  static Domain interval(double lo, double hi);
  /// Product of open intervals.
  static Domain box(std::vector<Interval> axes);

  /// Validates dimensions, non-emptiness of every box, and disjointness.
  Domain(std::size_t dim, std::vector<Box> boxes);

  [[nodiscard]] std::size_t dim() const noexcept { return dim_; }
  [[nodiscard]] const std::vector<Box>& boxes() const noexcept { return boxes_; }
  [[nodiscard]] bool is_empty() const noexcept { return boxes_.empty(); }

  /// Index of the open box containing x, or -1.
  [[nodiscard]] std::ptrdiff_t box_index(std::span<const double> x) const;

  /// True when every box of `sub` lies inside some box of this domain.
  [[nodiscard]] bool includes(const Domain& sub) const;

  /// True when the closure of every box of `region` lies inside some open box
  /// of this domain with at least `margin` to spare on every side.
  [[nodiscard]] bool includes_with_margin(const Region& region, double margin) const;

  friend bool operator==(const Domain&, const Domain&) = default;

 private:
  std::size_t dim_ = 1;
  std::vector<Box> boxes_;
};

bool contains(const Domain& dom, std::span<const double> x);

/// l-infinity distance from x to the complement of dom (+inf for R^d).
/// Throws OutsideDomain if x is not in dom.
double distance_to_boundary(const Domain& dom, std::span<const double> x);

/// Omega_eps: each box shrunk by eps on every side and intersected with the
/// closed l-infinity ball of radius 1/eps about the origin. Empty boxes are
/// dropped.
Region shrink_clip(const Domain& dom, double eps);

/// Standard point plus an infinitesimal displacement, one scalar per axis.
struct NearStandardPoint {
  std::vector<double> base;
  std::vector<AsymptoticScalar> offset;

  /// Concrete coordinates base + offset(rho).
  [[nodiscard]] std::vector<double> at(double rho) const;
  /// sup-norm of the offset at a concrete rho.
  [[nodiscard]] double offset_norm(double rho) const;
};

NearStandardPoint standard_point(std::vector<double> base);

struct SamplingOptions {
  /// Base points keep this fraction of the box width from every edge.
  double margin_fraction = 0.05;
};

/// Deterministic sample: n_base standard points, each paired with the zero
/// offset and with one offset c * rho^s per exponent s (|c| <= 1 per axis).
std::vector<NearStandardPoint> sample_near_standard(const Domain& dom, std::size_t n_base,
                                                    const std::vector<Rational>& offset_exponents,
                                                    std::uint64_t seed,
                                                    const SamplingOptions& opts = {});

/// Whether the cutoff of dom is identically 1 around p at this rho: the point
/// must sit at least 4 rho inside the boundary and inside the clipping ball
/// of Omega_{3 rho} by a margin of rho.
bool near_standard_valid(const Domain& dom, const NearStandardPoint& p, double rho);

/// Grid values rho for which every point is valid (the per-domain threshold
/// applied to a sample).
std::vector<double> rho_below_threshold(const Domain& dom, const std::vector<NearStandardPoint>& pts,
                                        const std::vector<double>& rho_grid);

void to_json(nlohmann::json& j, const Interval& iv);
void from_json(const nlohmann::json& j, Interval& iv);
void to_json(nlohmann::json& j, const Domain& d);
Domain domain_from_json(const nlohmann::json& j);
void to_json(nlohmann::json& j, const Region& r);

}  // namespace egorov
