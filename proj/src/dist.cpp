#include "egorov/dist.hpp"

#include <cmath>
#include <map>

#include <nlohmann/json.hpp>

#include "egorov/quadrature.hpp"

namespace egorov {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

double sign_of(unsigned order) { return (order % 2) ? -1.0 : 1.0; }

// Derivative of a standard function as a standard function.
StandardFunction derived(const StandardFunction& f, const MultiIndex& beta) {
  if (beta.is_zero()) return f;
  if (f.poly) return StandardFunction::polynomial(f.poly->derive(beta));
  StandardFunction g;
  g.dim = f.dim;
  g.name = "d" + to_string(beta) + "(" + f.name + ")";
  auto fd = f.d;
  g.d = [fd, beta](const MultiIndex& a, std::span<const double> x) { return fd(a + beta, x); };
  return g;
}

// Expansion of D_alpha = prod_i (sum_j A_ji d_j)^{alpha_i} into sum_gamma m_gamma d^gamma.
std::map<MultiIndex, double> chain_expansion(const Diffeo& theta, const MultiIndex& alpha) {
  const std::size_t d = theta.dim;
  std::map<MultiIndex, double> cur{{MultiIndex(d), 1.0}};
  for (std::size_t i = 0; i < d; ++i)
    for (unsigned r = 0; r < alpha[i]; ++r) {
      std::map<MultiIndex, double> next;
      for (const auto& [g, m] : cur)
        for (std::size_t j = 0; j < d; ++j) {
          const double a = theta.A(j, i);
          if (a != 0.0) next[g + MultiIndex::unit(d, j)] += m * a;
        }
      cur = std::move(next);
    }
  return cur;
}

}  // namespace

Distribution schwartz_embed(const Density& f, const Domain& dom) {
  if (f.dim != dom.dim()) throw DimensionMismatch("density dimension does not match domain");
  return Distribution{dom, {{Complex(1.0), MultiIndex(dom.dim()), f}}};
}

Distribution dirac(const Domain& dom, std::vector<double> a) {
  if (a.empty()) a.assign(dom.dim(), 0.0);
  if (a.size() != dom.dim()) throw DimensionMismatch("point mass dimension does not match domain");
  if (!contains(dom, a)) throw OutsideDomain("point mass location is not in the domain");
  return Distribution{dom, {{Complex(1.0), MultiIndex(dom.dim()), PointMass{std::move(a)}}}};
}

Distribution distr_derive(const Distribution& T, const MultiIndex& alpha) {
  if (alpha.dim() != T.dim()) throw DimensionMismatch("derivative multi-index dimension mismatch");
  Distribution out = T;
  for (auto& t : out.terms) t.alpha = t.alpha + alpha;
  return out;
}

Distribution distr_linear(Complex c1, const Distribution& T, Complex c2, const Distribution& S) {
  if (!(T.domain == S.domain)) throw DomainMismatch("distributions live on different domains");
  Distribution out{T.domain, {}};
  for (auto t : T.terms) {
    t.coeff *= c1;
    out.terms.push_back(std::move(t));
  }
  for (auto t : S.terms) {
    t.coeff *= c2;
    out.terms.push_back(std::move(t));
  }
  return out;
}

Distribution distr_mul_smooth(const StandardFunction& f, const Distribution& T) {
  if (f.dim != T.dim()) throw DimensionMismatch("smooth factor dimension mismatch");
  Distribution out{T.domain, {}};
  for (const auto& t : T.terms) {
    for (const auto& beta : sub_indices(t.alpha)) {
      const Complex c = t.coeff * sign_of(beta.order()) * multi_binomial(t.alpha, beta);
      const MultiIndex rest = t.alpha - beta;
      std::visit(overloaded{
                     [&](const Density& g) {
                       const StandardFunction fb = derived(f, beta);
                       if (fb.poly && fb.poly->is_zero()) return;
                       out.terms.push_back({c, rest, Density::times(fb, g)});
                     },
                     [&](const PointMass& p) {
                       const double v = f.d(beta, p.a);
                       if (v != 0.0) out.terms.push_back({c * v, rest, p});
                     },
                 },
                 t.base);
    }
  }
  return out;
}

Distribution distr_restrict(const Distribution& T, const Domain& sub) {
  if (sub.dim() != T.dim()) throw DimensionMismatch("restriction target dimension mismatch");
  if (!T.domain.includes(sub)) throw DomainMismatch("restriction target is not a subdomain");
  Distribution out{sub, {}};
  for (const auto& t : T.terms) {
    if (const auto* p = std::get_if<PointMass>(&t.base); p && !contains(sub, p->a)) continue;
    out.terms.push_back(t);
  }
  return out;
}

GenFunc convolve_delta(const Distribution& T, KernelPtr k) {
  std::vector<NodePtr> terms;
  for (const auto& t : T.terms) {
    const GenFunc piece = std::visit(overloaded{
                                         [&](const Density& g) { return convolution_genfunc(k, g, T.domain, t.alpha); },
                                         [&](const PointMass& p) {
                                           GenFunc f = kernel_genfunc(k, T.domain, p.a);
                                           return t.alpha.is_zero() ? f : derive(f, t.alpha);
                                         },
                                     },
                                     t.base);
    terms.push_back(make_scalar_mul(AsymptoticScalar(t.coeff), piece.root()));
  }
  return GenFunc(T.domain, make_sum(std::move(terms)));
}

GenFunc iota_embed(const Distribution& T, KernelPtr k) {
  return cutoff_genfunc(k, T.domain) * convolve_delta(T, k);
}

Distribution change_of_variables_dist(const Distribution& T, const Diffeo& theta, const Domain& target) {
  if (theta.dim != T.dim() || target.dim() != T.dim()) throw DimensionMismatch("change of variables dimension mismatch");
  Distribution out{target, {}};
  for (const auto& t : T.terms) {
    if (!t.alpha.is_zero() && !theta.affine)
      throw UnsupportedTerm("derivative terms need an affine change of variables");
    DistBase mapped = std::visit(
        overloaded{
            [&](const Density& g) -> DistBase {
              Density h = g;
              h.name = g.name + " o inv(" + theta.name + ")";
              h.poly.reset();
              if (h.cls == DensityClass::polynomial) h.cls = DensityClass::smooth;
              auto gv = g.value;
              auto inv = theta.inverse;
              h.value = [gv, inv](std::span<const double> y) { return gv(inv(y)); };
              for (auto& b : h.breaks) b.clear();
              if (theta.axis_wise())
                for (std::size_t i = 0; i < g.breaks.size(); ++i)
                  for (double b : g.breaks[i]) h.breaks[i].push_back(theta.axis_forward[i](b));
              return h;
            },
            [&](const PointMass& p) -> DistBase { return PointMass{theta.forward(p.a)}; },
        },
        t.base);
    Complex c = t.coeff;
    if (const auto* p = std::get_if<PointMass>(&t.base)) c *= std::abs(theta.jacobian_det(p->a));
    if (t.alpha.is_zero()) {
      out.terms.push_back({c, t.alpha, std::move(mapped)});
      continue;
    }
    for (const auto& [gamma, m] : chain_expansion(theta, t.alpha))
      if (m != 0.0) out.terms.push_back({c * m, gamma, mapped});
  }
  return out;
}

GenFunc pushforward_genfunc(const GenFunc& f, const Diffeo& theta, const Domain& target) {
  if (theta.dim != f.dim() || target.dim() != f.dim()) throw DimensionMismatch("pushforward dimension mismatch");
  return GenFunc(target, std::make_shared<const Node>(Node{node::Pushforward{theta, f.root()}}));
}

Complex pair_classical(const Distribution& T, const StandardFunction& phi, const Box& phi_support,
                       unsigned nodes_per_panel, unsigned panels) {
  Complex total = 0.0;
  for (const auto& t : T.terms) {
    const double s = sign_of(t.alpha.order());
    std::visit(overloaded{
                   [&](const PointMass& p) { total += t.coeff * s * phi.d(t.alpha, p.a); },
                   [&](const Density& g) {
                     const std::size_t d = T.dim();
                     std::vector<quad::Nodes1D> axes;
                     for (std::size_t i = 0; i < d; ++i) {
                       const Interval& iv = phi_support.axes[i];
                       std::vector<double> br = i < g.breaks.size() ? g.breaks[i] : std::vector<double>{};
                       for (unsigned k = 1; k < panels; ++k) br.push_back(iv.lo + iv.width() * k / panels);
                       axes.push_back(quad::composite(iv.lo, iv.hi, std::move(br), nodes_per_panel));
                     }
                     std::vector<std::size_t> idx(d, 0);
                     std::vector<double> x(d);
                     Complex acc = 0.0;
                     while (true) {
                       double w = 1.0;
                       for (std::size_t i = 0; i < d; ++i) {
                         x[i] = axes[i].x[idx[i]];
                         w *= axes[i].w[idx[i]];
                       }
                       acc += w * g.value(x) * phi.d(t.alpha, x);
                       std::size_t i = 0;
                       while (i < d && ++idx[i] == axes[i].x.size()) idx[i++] = 0;
                       if (i == d) break;
                     }
                     total += t.coeff * s * acc;
                   },
               },
               t.base);
  }
  return total;
}

void to_json(nlohmann::json& j, const Distribution& T) {
  nlohmann::json terms = nlohmann::json::array();
  for (const auto& t : T.terms) {
    nlohmann::json jt = {{"coeff", {t.coeff.real(), t.coeff.imag()}}, {"alpha", t.alpha.values()}};
    std::visit(overloaded{
                   [&](const Density& g) { jt["density"] = g; },
                   [&](const PointMass& p) { jt["point_mass"] = p.a; },
               },
               t.base);
    terms.push_back(std::move(jt));
  }
  j = {{"domain", T.domain}, {"terms", terms}};
}

}  // namespace egorov
