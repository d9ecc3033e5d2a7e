#include "egorov/regular.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "egorov/weak.hpp"

namespace egorov {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

constexpr double kPosInf = std::numeric_limits<double>::infinity();

struct Walk {
  bool ok = true;
  std::string reason;
  double bound = 0.0;
  std::string text;
};

Walk walk(const Node& n) {
  return std::visit(
      overloaded{
          [](const node::Standard& s) {
            return Walk{true, {}, 0.0, s.alpha.is_zero() ? s.f.name : "d" + to_string(s.alpha) + "(" + s.f.name + ")"};
          },
          [](const node::Scalar& s) {
            const double b = s.c.is_zero() ? 0.0 : std::max(0.0, -to_double(s.c.leading_exponent()));
            return Walk{true, {}, b, to_string(s.c)};
          },
          [](const node::Kernel&) { return Walk{false, "kernel leaf", 0.0, {}}; },
          [](const node::Cutoff&) { return Walk{false, "cutoff leaf", 0.0, {}}; },
          [](const node::Convolution&) { return Walk{false, "convolution leaf", 0.0, {}}; },
          [](const node::Compose&) { return Walk{false, "smooth composition", 0.0, {}}; },
          [](const node::Pushforward&) { return Walk{false, "pushforward", 0.0, {}}; },
          [](const node::Sum& s) {
            Walk out{true, {}, 0.0, "sum("};
            for (std::size_t i = 0; i < s.terms.size(); ++i) {
              Walk w = walk(*s.terms[i]);
              if (!w.ok) return w;
              out.bound = std::max(out.bound, w.bound);
              out.text += (i ? ", " : "") + w.text;
            }
            out.text += ")";
            return out;
          },
          [](const node::Product& p) {
            Walk out{true, {}, 0.0, "product("};
            for (std::size_t i = 0; i < p.factors.size(); ++i) {
              Walk w = walk(*p.factors[i]);
              if (!w.ok) return w;
              out.bound += w.bound;
              out.text += (i ? ", " : "") + w.text;
            }
            out.text += ")";
            return out;
          },
          [](const node::ScalarMul& s) {
            Walk w = walk(*s.child);
            if (!w.ok) return w;
            const double b = s.c.is_zero() ? 0.0 : std::max(0.0, -to_double(s.c.leading_exponent()));
            return Walk{true, {}, w.bound + b, "scale(" + to_string(s.c) + ", " + w.text + ")"};
          },
      },
      n.v);
}

double growth_exponent(const std::vector<double>& rhos, const std::vector<double>& mags) {
  std::vector<double> lx, ly;
  for (std::size_t i = 0; i < rhos.size(); ++i) {
    if (!std::isfinite(mags[i])) return kPosInf;
    if (mags[i] > 0.0) {
      lx.push_back(std::log(rhos[i]));
      ly.push_back(std::log(mags[i]));
    }
  }
  if (lx.size() < 2) return -kPosInf;
  const double n = static_cast<double>(lx.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < lx.size(); ++i) {
    sx += lx[i];
    sy += ly[i];
    sxx += lx[i] * lx[i];
    sxy += lx[i] * ly[i];
  }
  const double den = n * sxx - sx * sx;
  if (den == 0.0) return -kPosInf;
  return -(n * sxy - sx * sy) / den;
}

bool grows(double hi, double lo, double threshold) {
  if (hi == kPosInf) return true;
  if (hi == -kPosInf) return false;
  if (lo == -kPosInf) return true;
  return hi - lo >= threshold;
}

std::vector<MultiIndex> indices_up_to(std::size_t d, unsigned k) {
  std::vector<MultiIndex> out;
  for (unsigned o = 0; o <= k; ++o)
    for (auto& a : multi_indices_of_order(d, o)) out.push_back(std::move(a));
  return out;
}

}  // namespace

const char* to_string(Regularity r) {
  switch (r) {
    case Regularity::certified_member: return "certified_member";
    case Regularity::refuted: return "refuted";
    case Regularity::inconclusive: return "inconclusive";
  }
  return "?";
}

const char* to_string(Membership m) {
  switch (m) {
    case Membership::member: return "member";
    case Membership::not_member: return "not_member";
    case Membership::undetermined: return "undetermined";
  }
  return "?";
}

RegularityReport certify_member(const GenFunc& f) {
  RegularityReport r;
  const Walk w = walk(*f.root());
  if (w.ok) {
    r.verdict = Regularity::certified_member;
    r.certificate = w.text;
    r.bound_exponent = w.bound;
  } else {
    r.certificate = "not generated syntactically: " + w.reason;
  }
  return r;
}

std::vector<double> regularity_rho_grid() { return dyadic_rho_grid(3, 8); }

RegularityReport refute_member(const GenFunc& f, unsigned alpha_max, const std::vector<std::vector<double>>& pts,
                               const std::vector<double>& rho_grid, const RefuteOptions& opts) {
  if (alpha_max < 2) throw std::invalid_argument("refutation needs alpha_max >= 2");
  const std::size_t d = f.dim();

  std::set<std::vector<double>> bases(pts.begin(), pts.end());
  if (!rho_grid.empty())
    for (auto& p : features(f, *std::min_element(rho_grid.begin(), rho_grid.end())).points)
      if (p.size() == d && contains(f.domain(), p)) bases.insert(p);

  struct Probe {
    NearStandardPoint pt;
    double c;
  };
  std::vector<Probe> probes;
  for (const auto& b : bases)
    for (double c : opts.offsets) {
      NearStandardPoint p = standard_point(b);
      if (c != 0.0)
        for (auto& o : p.offset) o = AsymptoticScalar::monomial(Complex(c), Rational(1));
      probes.push_back({std::move(p), c});
    }

  const auto alphas = indices_up_to(d, alpha_max);
  std::vector<GenFunc> derivs;
  for (const auto& a : alphas) derivs.push_back(a.is_zero() ? f : derive(f, a));

  const std::size_t na = alphas.size();
  std::vector<double> exps(probes.size() * na, -kPosInf);
  sweep_for(
      probes.size() * na,
      [&](std::size_t idx) {
        const Probe& pr = probes[idx / na];
        const GenFunc& g = derivs[idx % na];
        std::vector<double> rhos, mags;
        for (double rho : rho_grid) {
          if (!near_standard_valid(f.domain(), pr.pt, rho)) continue;
          const auto x = pr.pt.at(rho);
          EvalContext ctx;
          ctx.rho = rho;
          ctx.quad = opts.quad;
          double m;
          try {
            m = std::abs(eval(g, x, ctx));
          } catch (const QuadratureFailure&) {
            m = kPosInf;
          }
          rhos.push_back(rho);
          mags.push_back(std::isnan(m) ? kPosInf : m);
        }
        exps[idx] = rhos.size() < 2 ? -kPosInf : growth_exponent(rhos, mags);
      },
      opts.exec);

  RegularityReport r;
  r.certificate = "no point with growth increasing by at least " + std::to_string(opts.slope_threshold) +
                  " per derivative order";
  for (std::size_t p = 0; p < probes.size(); ++p) {
    for (std::size_t a = 0; a < na; ++a)
      r.growth.push_back({probes[p].pt.base, std::vector<double>(d, probes[p].c), alphas[a], exps[p * na + a]});
    if (r.verdict == Regularity::refuted) continue;

    std::vector<double> N(alpha_max + 1, -kPosInf);
    for (std::size_t a = 0; a < na; ++a) {
      const unsigned k = alphas[a].order();
      N[k] = std::max(N[k], exps[p * na + a]);
    }
    const unsigned first = std::max(1u, (alpha_max + 1) / 2);
    bool refuted = true;
    for (unsigned k = first; k <= alpha_max && refuted; ++k) refuted = grows(N[k], N[k - 1], opts.slope_threshold);
    if (!refuted) continue;

    r.verdict = Regularity::refuted;
    std::string trace;
    for (unsigned k = 0; k <= alpha_max; ++k) {
      const double v = N[k];
      trace += (k ? ", " : "") + std::string("N") + std::to_string(k) + "=" +
               (std::isinf(v) ? (v > 0 ? "+inf" : "-inf") : std::to_string(v));
    }
    std::string where;
    for (std::size_t i = 0; i < d; ++i) where += (i ? "," : "") + std::to_string(probes[p].pt.base[i]);
    r.certificate = "growth at xi=(" + where + ")+" + std::to_string(probes[p].c) + "rho: " + trace;
    for (std::size_t a = 0; a < na; ++a) r.refutation_trace.push_back(p * na + a);
  }
  return r;
}

std::vector<CatalogueRow> regular_catalogue(KernelPtr k, const CatalogueOptions& opts) {
  const Domain dom = Domain::interval(-2.0, 2.0);
  const std::vector<std::vector<double>> pts{{-0.7}, {-0.2}, {0.25}, {0.6}};
  const auto grid = regularity_rho_grid();
  RefuteOptions ropts;

  const StandardFunction sin_f = StandardFunction::separable({Smooth1D::sin()});
  const StandardFunction poly_f = StandardFunction::polynomial(Polynomial::univariate({0.5, -1.0, 0.0, 2.0}));

  struct Entry {
    std::string name;
    Distribution T;
    std::optional<StandardFunction> smooth;
  };
  std::vector<Entry> entries{
      {"delta", dirac(dom), std::nullopt},
      {"d delta", distr_derive(dirac(dom), MultiIndex({1})), std::nullopt},
      {"H", schwartz_embed(Density::heaviside(), dom), std::nullopt},
      {"S(sin)", schwartz_embed(Density::from_standard(sin_f), dom), sin_f},
      {"S(P)", schwartz_embed(Density::from_standard(poly_f), dom), poly_f},
  };

  // Equality is decided on a coarse grid, where the O(rho^{q+1}) gap of a
  // non-polynomial convolution sits far above roundoff.
  std::vector<NearStandardPoint> eq_pts;
  for (double x : {-0.25, -0.1, 0.05, 0.2}) eq_pts.push_back(standard_point({x}));
  const std::vector<double> eq_grid{0.25, 0.125};

  std::vector<CatalogueRow> rows;
  for (const auto& e : entries) {
    const GenFunc f = iota_embed(e.T, k);
    CatalogueRow row;
    row.name = e.name;
    row.refutation = refute_member(f, opts.alpha_max, pts, grid, ropts).verdict;
    row.certification = certify_member(f).verdict;
    if (e.smooth) {
      const GenFunc s = sigma_embed(*e.smooth, dom);
      if (certify_member(s).verdict == Regularity::certified_member) {
        row.equals_certified = compare_on_monad(f, s, eq_pts, eq_grid, opts.equality_tol).equal;
        row.associated_certified =
            associated(f, s, default_test_suite(1), dyadic_rho_grid(), opts.association_tol).verdict ==
            Association::associated;
      }
    }
    if (row.certification == Regularity::certified_member || row.equals_certified)
      row.membership = Membership::member;
    else if (row.refutation == Regularity::refuted)
      row.membership = Membership::not_member;
    rows.push_back(std::move(row));
  }
  return rows;
}

std::vector<CatalogueRow> expected_catalogue() {
  using R = Regularity;
  using M = Membership;
  return {
      {"delta", R::refuted, R::inconclusive, false, false, M::not_member},
      {"d delta", R::refuted, R::inconclusive, false, false, M::not_member},
      {"H", R::refuted, R::inconclusive, false, false, M::not_member},
      {"S(sin)", R::inconclusive, R::inconclusive, false, true, M::undetermined},
      {"S(P)", R::inconclusive, R::inconclusive, true, true, M::member},
  };
}

bool catalogue_matches(const std::vector<CatalogueRow>& got, const std::vector<CatalogueRow>& want) {
  if (got.size() != want.size()) return false;
  for (std::size_t i = 0; i < got.size(); ++i) {
    const auto& a = got[i];
    const auto& b = want[i];
    if (a.name != b.name || a.refutation != b.refutation || a.certification != b.certification ||
        a.equals_certified != b.equals_certified || a.associated_certified != b.associated_certified ||
        a.membership != b.membership)
      return false;
  }
  return true;
}

void to_json(nlohmann::json& j, const RegularityReport& r) {
  auto num = [](double v) -> nlohmann::json {
    if (std::isinf(v)) return v > 0 ? "+inf" : "-inf";
    return v;
  };
  nlohmann::json g = nlohmann::json::array();
  for (const auto& s : r.growth)
    g.push_back({{"base", s.base}, {"offset_rho", s.offset_coeff}, {"alpha", s.alpha.values()}, {"n", num(s.exponent)}});
  j = {{"verdict", to_string(r.verdict)},
       {"certificate", r.certificate},
       {"bound_exponent", r.bound_exponent},
       {"growth", g},
       {"refutation_trace", r.refutation_trace}};
}

void to_json(nlohmann::json& j, const CatalogueRow& r) {
  j = {{"name", r.name},
       {"refutation", to_string(r.refutation)},
       {"certification", to_string(r.certification)},
       {"equals_certified", r.equals_certified},
       {"associated_certified", r.associated_certified},
       {"membership", to_string(r.membership)}};
}

}  // namespace egorov
