#include "egorov/domain.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <string>

#include <nlohmann/json.hpp>

namespace egorov {

bool Box::empty() const noexcept {
  return axes.empty() || std::any_of(axes.begin(), axes.end(), [](const Interval& i) { return i.empty(); });
}

bool Box::bounded() const noexcept {
  return std::all_of(axes.begin(), axes.end(), [](const Interval& i) { return i.bounded(); });
}

bool Box::contains_open(std::span<const double> x) const {
  if (x.size() != axes.size()) throw DimensionMismatch("point dimension does not match box");
  for (std::size_t i = 0; i < axes.size(); ++i)
    if (!(axes[i].lo < x[i] && x[i] < axes[i].hi)) return false;
  return true;
}

bool Box::contains_closed(std::span<const double> x) const {
  if (x.size() != axes.size()) throw DimensionMismatch("point dimension does not match box");
  for (std::size_t i = 0; i < axes.size(); ++i)
    if (!(axes[i].lo <= x[i] && x[i] <= axes[i].hi)) return false;
  return true;
}

double Box::volume() const {
  double v = 1.0;
  for (const auto& a : axes) v *= std::max(0.0, a.width());
  return v;
}

bool Region::contains(std::span<const double> x) const {
  return std::any_of(boxes.begin(), boxes.end(), [&](const Box& b) { return b.contains_closed(x); });
}

namespace {

bool open_boxes_overlap(const Box& a, const Box& b) {
  for (std::size_t i = 0; i < a.dim(); ++i)
    if (a.axes[i].hi <= b.axes[i].lo || b.axes[i].hi <= a.axes[i].lo) return false;
  return true;
}

}  // namespace

Domain::Domain(std::size_t dim, std::vector<Box> boxes) : dim_(dim), boxes_(std::move(boxes)) {
  if (dim_ == 0) throw std::invalid_argument("domain dimension must be positive");
  for (const auto& b : boxes_) {
    if (b.dim() != dim_) throw DimensionMismatch("box dimension does not match domain");
    if (b.empty()) throw std::invalid_argument("domain boxes must be nonempty");
  }
  for (std::size_t i = 0; i < boxes_.size(); ++i)
    for (std::size_t j = i + 1; j < boxes_.size(); ++j)
      if (open_boxes_overlap(boxes_[i], boxes_[j]))
        throw std::invalid_argument("domain boxes must be pairwise disjoint");
}

Domain Domain::whole(std::size_t dim) { return Domain(dim, {Box{std::vector<Interval>(dim)}}); }

Domain Domain::empty(std::size_t dim) { return Domain(dim, {}); }

Domain Domain::interval(double lo, double hi) { return Domain(1, {Box{{Interval{lo, hi}}}}); }

Domain Domain::box(std::vector<Interval> axes) {
  const std::size_t d = axes.size();
  return Domain(d, {Box{std::move(axes)}});
}

std::ptrdiff_t Domain::box_index(std::span<const double> x) const {
  if (x.size() != dim_) throw DimensionMismatch("point dimension does not match domain");
  for (std::size_t k = 0; k < boxes_.size(); ++k)
    if (boxes_[k].contains_open(x)) return static_cast<std::ptrdiff_t>(k);
  return -1;
}

bool Domain::includes(const Domain& sub) const {
  if (sub.dim_ != dim_) throw DimensionMismatch("subdomain dimension mismatch");
  return std::all_of(sub.boxes_.begin(), sub.boxes_.end(), [&](const Box& s) {
    return std::any_of(boxes_.begin(), boxes_.end(), [&](const Box& b) {
      for (std::size_t i = 0; i < dim_; ++i)
        if (s.axes[i].lo < b.axes[i].lo || s.axes[i].hi > b.axes[i].hi) return false;
      return true;
    });
  });
}

bool Domain::includes_with_margin(const Region& region, double margin) const {
  if (region.dim != dim_) throw DimensionMismatch("region dimension mismatch");
  return std::all_of(region.boxes.begin(), region.boxes.end(), [&](const Box& s) {
    return std::any_of(boxes_.begin(), boxes_.end(), [&](const Box& b) {
      for (std::size_t i = 0; i < dim_; ++i)
        if (!(s.axes[i].lo - margin > b.axes[i].lo && s.axes[i].hi + margin < b.axes[i].hi)) return false;
      return true;
    });
  });
}

bool contains(const Domain& dom, std::span<const double> x) { return dom.box_index(x) >= 0; }

double distance_to_boundary(const Domain& dom, std::span<const double> x) {
  const auto k = dom.box_index(x);
  if (k < 0) throw OutsideDomain("point is not in the domain");
  // The boundary of an open box is disjoint from every other (disjoint, open)
  // box, so the distance to the complement of the union is the distance to the
  // boundary of the containing box.
  double d = kInf;
  for (std::size_t i = 0; i < dom.dim(); ++i) {
    const Interval& iv = dom.boxes()[static_cast<std::size_t>(k)].axes[i];
    d = std::min({d, x[i] - iv.lo, iv.hi - x[i]});
  }
  return d;
}

Region shrink_clip(const Domain& dom, double eps) {
  if (!(eps > 0.0)) throw std::invalid_argument("shrink_clip requires eps > 0");
  Region out{dom.dim(), {}};
  const double r = 1.0 / eps;
  for (const auto& b : dom.boxes()) {
    Box s;
    bool keep = true;
    for (const auto& iv : b.axes) {
      Interval c{std::max(iv.lo + eps, -r), std::min(iv.hi - eps, r)};
      if (c.lo > c.hi) {
        keep = false;
        break;
      }
      s.axes.push_back(c);
    }
    if (keep) out.boxes.push_back(std::move(s));
  }
  return out;
}

std::vector<double> NearStandardPoint::at(double rho) const {
  std::vector<double> x = base;
  for (std::size_t i = 0; i < offset.size() && i < x.size(); ++i) x[i] += offset[i].evaluate(rho).real();
  return x;
}

double NearStandardPoint::offset_norm(double rho) const {
  double m = 0.0;
  for (const auto& o : offset) m = std::max(m, std::abs(o.evaluate(rho)));
  return m;
}

NearStandardPoint standard_point(std::vector<double> base) {
  NearStandardPoint p;
  p.offset.assign(base.size(), AsymptoticScalar());
  p.base = std::move(base);
  return p;
}

namespace {

// Bounded window used for sampling along an axis with infinite ends.
Interval sampling_window(const Interval& iv) {
  if (iv.bounded()) return iv;
  if (iv.lo == -kInf && iv.hi == kInf) return {-1.0, 1.0};
  if (iv.lo == -kInf) return {iv.hi - 2.0, iv.hi};
  return {iv.lo, iv.lo + 2.0};
}

}  // namespace

std::vector<NearStandardPoint> sample_near_standard(const Domain& dom, std::size_t n_base,
                                                    const std::vector<Rational>& offset_exponents,
                                                    std::uint64_t seed, const SamplingOptions& opts) {
  if (dom.is_empty()) throw EmptyDomain("cannot sample an empty domain");
  if (n_base == 0) throw std::invalid_argument("n_base must be at least 1");
  for (const auto& s : offset_exponents)
    if (s <= Rational(0)) throw std::invalid_argument("offset exponents must be positive");

  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<NearStandardPoint> pts;
  pts.reserve(n_base * (1 + offset_exponents.size()));
  for (std::size_t n = 0; n < n_base; ++n) {
    const Box& b = dom.boxes()[n % dom.boxes().size()];
    std::vector<double> base(dom.dim());
    for (std::size_t i = 0; i < dom.dim(); ++i) {
      const Interval w = sampling_window(b.axes[i]);
      const double m = opts.margin_fraction * w.width();
      base[i] = w.lo + m + unit(rng) * (w.width() - 2.0 * m);
    }
    pts.push_back(standard_point(base));
    for (const auto& s : offset_exponents) {
      NearStandardPoint p{base, {}};
      for (std::size_t i = 0; i < dom.dim(); ++i)
        p.offset.push_back(AsymptoticScalar::monomial(Complex(2.0 * unit(rng) - 1.0, 0.0), s));
      pts.push_back(std::move(p));
    }
  }
  return pts;
}

bool near_standard_valid(const Domain& dom, const NearStandardPoint& p, double rho) {
  const auto k = dom.box_index(p.base);
  if (k < 0) return false;
  const double off = p.offset_norm(rho);
  const double dist = distance_to_boundary(dom, p.base);
  double sup = 0.0;
  for (double v : p.base) sup = std::max(sup, std::abs(v));
  return dist - off >= 4.0 * rho && sup + off <= 1.0 / (3.0 * rho) - rho;
}

std::vector<double> rho_below_threshold(const Domain& dom, const std::vector<NearStandardPoint>& pts,
                                        const std::vector<double>& rho_grid) {
  std::vector<double> out;
  for (double rho : rho_grid)
    if (std::all_of(pts.begin(), pts.end(), [&](const NearStandardPoint& p) { return near_standard_valid(dom, p, rho); }))
      out.push_back(rho);
  return out;
}

namespace {

nlohmann::json endpoint(double v) {
  if (v == kInf) return "inf";
  if (v == -kInf) return "-inf";
  return v;
}

double endpoint_from(const nlohmann::json& j) {
  if (j.is_string()) {
    const auto s = j.get<std::string>();
    if (s == "inf" || s == "+inf") return kInf;
    if (s == "-inf") return -kInf;
    throw std::invalid_argument("bad interval endpoint '" + s + "'");
  }
  return j.get<double>();
}

}  // namespace

void to_json(nlohmann::json& j, const Interval& iv) { j = nlohmann::json::array({endpoint(iv.lo), endpoint(iv.hi)}); }

void from_json(const nlohmann::json& j, Interval& iv) {
  if (!j.is_array() || j.size() != 2) throw std::invalid_argument("interval must be [lo, hi]");
  iv = Interval{endpoint_from(j[0]), endpoint_from(j[1])};
}

void to_json(nlohmann::json& j, const Domain& d) {
  nlohmann::json boxes = nlohmann::json::array();
  for (const auto& b : d.boxes()) boxes.push_back(b.axes);
  j = {{"dim", d.dim()}, {"boxes", boxes}};
}

Domain domain_from_json(const nlohmann::json& j) {
  const auto dim = j.at("dim").get<std::size_t>();
  std::vector<Box> boxes;
  for (const auto& b : j.at("boxes")) boxes.push_back(Box{b.get<std::vector<Interval>>()});
  return Domain(dim, std::move(boxes));
}

void to_json(nlohmann::json& j, const Region& r) {
  nlohmann::json boxes = nlohmann::json::array();
  for (const auto& b : r.boxes) boxes.push_back(b.axes);
  j = {{"dim", r.dim}, {"boxes", boxes}};
}

}  // namespace egorov
