#include "egorov/genfun.hpp"

#include <algorithm>
#include <cmath>

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

NodePtr make(auto&& v) { return std::make_shared<const Node>(Node{std::forward<decltype(v)>(v)}); }

NodePtr zero_node() { return make(node::Scalar{AsymptoticScalar()}); }

bool is_unit_scalar(const AsymptoticScalar& c) {
  return c.terms().size() == 1 && c.terms()[0].exponent == Rational(0) && c.terms()[0].coefficient == Complex(1.0);
}

MultiIndex zero_index(std::size_t d) { return MultiIndex(d); }

}  // namespace

GenFunc::GenFunc(Domain domain, NodePtr root) : domain_(std::move(domain)), root_(std::move(root)) {
  if (!root_) throw std::invalid_argument("generalized function needs an expression");
}

GenFunc sigma_embed(const StandardFunction& f, const Domain& dom) {
  if (f.dim != dom.dim()) throw DimensionMismatch("standard function dimension does not match domain");
  return GenFunc(dom, make(node::Standard{f, zero_index(f.dim)}));
}

GenFunc scalar_genfunc(const AsymptoticScalar& c, const Domain& dom) { return GenFunc(dom, make(node::Scalar{c})); }

GenFunc zero_genfunc(const Domain& dom) { return GenFunc(dom, zero_node()); }

GenFunc kernel_genfunc(KernelPtr k, const Domain& dom, std::vector<double> center) {
  if (center.empty()) center.assign(dom.dim(), 0.0);
  if (center.size() != dom.dim()) throw DimensionMismatch("kernel center dimension does not match domain");
  return GenFunc(dom, make(node::Kernel{std::move(k), zero_index(dom.dim()), std::move(center)}));
}

GenFunc cutoff_genfunc(KernelPtr k, const Domain& dom) {
  return GenFunc(dom, make(node::Cutoff{std::move(k), dom, zero_index(dom.dim())}));
}

GenFunc convolution_genfunc(KernelPtr k, const Density& g, const Domain& dom, MultiIndex alpha) {
  if (g.dim != dom.dim()) throw DimensionMismatch("density dimension does not match domain");
  if (alpha.dim() == 0) alpha = zero_index(dom.dim());
  return GenFunc(dom, make(node::Convolution{std::move(k), g, std::move(alpha)}));
}

GenFunc compose(const UnaryFunction& g, const GenFunc& f) {
  return GenFunc(f.domain(), make(node::Compose{g, 0, f.root()}));
}

bool is_zero_node(const NodePtr& n) {
  const auto* s = std::get_if<node::Scalar>(&n->v);
  return s && s->c.is_zero();
}

NodePtr make_sum(std::vector<NodePtr> terms) {
  std::vector<NodePtr> flat;
  for (auto& t : terms) {
    if (is_zero_node(t)) continue;
    if (const auto* s = std::get_if<node::Sum>(&t->v))
      flat.insert(flat.end(), s->terms.begin(), s->terms.end());
    else
      flat.push_back(std::move(t));
  }
  if (flat.empty()) return zero_node();
  if (flat.size() == 1) return flat[0];
  return make(node::Sum{std::move(flat)});
}

NodePtr make_product(std::vector<NodePtr> factors) {
  std::vector<NodePtr> flat;
  for (auto& f : factors) {
    if (is_zero_node(f)) return zero_node();
    if (const auto* p = std::get_if<node::Product>(&f->v))
      flat.insert(flat.end(), p->factors.begin(), p->factors.end());
    else
      flat.push_back(std::move(f));
  }
  if (flat.empty()) return make(node::Scalar{AsymptoticScalar(1.0)});
  if (flat.size() == 1) return flat[0];
  return make(node::Product{std::move(flat)});
}

NodePtr make_scalar_mul(const AsymptoticScalar& c, NodePtr child) {
  if (c.is_zero() || is_zero_node(child)) return zero_node();
  if (is_unit_scalar(c)) return child;
  return make(node::ScalarMul{c, std::move(child)});
}

GenFunc combine(CombineOp op, const GenFunc& f, const GenFunc& g) {
  if (!(f.domain() == g.domain())) throw DomainMismatch("operands live on different domains");
  switch (op) {
    case CombineOp::add: return GenFunc(f.domain(), make_sum({f.root(), g.root()}));
    case CombineOp::mul: return GenFunc(f.domain(), make_product({f.root(), g.root()}));
    case CombineOp::scalar_mul: {
      const auto* s = std::get_if<node::Scalar>(&g.root()->v);
      if (!s) throw std::invalid_argument("scalar_mul needs a scalar operand");
      return GenFunc(f.domain(), make_scalar_mul(s->c, f.root()));
    }
  }
  throw std::invalid_argument("unknown combine op");
}

GenFunc combine(CombineOp op, const GenFunc& f, const AsymptoticScalar& c) {
  return combine(op, f, scalar_genfunc(c, f.domain()));
}

GenFunc operator+(const GenFunc& f, const GenFunc& g) { return combine(CombineOp::add, f, g); }
GenFunc operator-(const GenFunc& f) { return GenFunc(f.domain(), make_scalar_mul(AsymptoticScalar(-1.0), f.root())); }
GenFunc operator-(const GenFunc& f, const GenFunc& g) { return f + (-g); }
GenFunc operator*(const GenFunc& f, const GenFunc& g) { return combine(CombineOp::mul, f, g); }
GenFunc operator*(const AsymptoticScalar& c, const GenFunc& f) {
  return GenFunc(f.domain(), make_scalar_mul(c, f.root()));
}

namespace {

MultiIndex bump_index(const MultiIndex& a, std::size_t axis) {
  MultiIndex b = a;
  b[axis] += 1;
  return b;
}

NodePtr derive_unit(const NodePtr& n, std::size_t j) {
  return std::visit(
      overloaded{
          [&](const node::Standard& s) -> NodePtr {
            if (s.f.poly) {
              auto p = s.f.poly->derive(bump_index(s.alpha, j));
              if (p.is_zero()) return zero_node();
              return make(node::Standard{StandardFunction::polynomial(std::move(p)), zero_index(s.f.dim)});
            }
            return make(node::Standard{s.f, bump_index(s.alpha, j)});
          },
          [&](const node::Scalar&) -> NodePtr { return zero_node(); },
          [&](const node::Kernel& k) -> NodePtr { return make(node::Kernel{k.kernel, bump_index(k.alpha, j), k.center}); },
          [&](const node::Cutoff& c) -> NodePtr { return make(node::Cutoff{c.kernel, c.domain, bump_index(c.alpha, j)}); },
          [&](const node::Convolution& c) -> NodePtr {
            return make(node::Convolution{c.kernel, c.density, bump_index(c.alpha, j)});
          },
          [&](const node::Sum& s) -> NodePtr {
            std::vector<NodePtr> t;
            for (const auto& c : s.terms) t.push_back(derive_unit(c, j));
            return make_sum(std::move(t));
          },
          [&](const node::Product& p) -> NodePtr {
            std::vector<NodePtr> t;
            for (std::size_t k = 0; k < p.factors.size(); ++k) {
              auto fs = p.factors;
              fs[k] = derive_unit(fs[k], j);
              t.push_back(make_product(std::move(fs)));
            }
            return make_sum(std::move(t));
          },
          [&](const node::ScalarMul& s) -> NodePtr { return make_scalar_mul(s.c, derive_unit(s.child, j)); },
          [&](const node::Compose& c) -> NodePtr {
            return make_product({make(node::Compose{c.g, c.order + 1, c.child}), derive_unit(c.child, j)});
          },
          [&](const node::Pushforward& p) -> NodePtr {
            if (!p.theta.affine) throw UnsupportedTerm("derivative of a pushforward through a non-affine map");
            std::vector<NodePtr> t;
            for (std::size_t i = 0; i < p.theta.dim; ++i) {
              const double b = p.theta.A_inv(i, j);
              if (b == 0.0) continue;
              t.push_back(make_scalar_mul(AsymptoticScalar(b), make(node::Pushforward{p.theta, derive_unit(p.child, i)})));
            }
            return make_sum(std::move(t));
          },
      },
      n->v);
}

}  // namespace

NodePtr derive_node(const NodePtr& n, const MultiIndex& alpha) {
  NodePtr cur = n;
  for (std::size_t j = 0; j < alpha.dim(); ++j)
    for (unsigned k = 0; k < alpha[j]; ++k) cur = derive_unit(cur, j);
  return cur;
}

GenFunc derive(const GenFunc& f, const MultiIndex& alpha) {
  if (alpha.dim() != f.dim()) throw DimensionMismatch("derivative multi-index dimension mismatch");
  return GenFunc(f.domain(), derive_node(f.root(), alpha));
}

GenFunc restrict_to(const GenFunc& f, const Domain& sub) {
  if (sub.dim() != f.dim()) throw DimensionMismatch("restriction target dimension mismatch");
  if (sub.is_empty()) throw DomainMismatch("cannot restrict to the empty domain");
  if (!f.domain().includes(sub)) throw DomainMismatch("restriction target is not a subdomain");
  return GenFunc(sub, f.root());
}

namespace {

struct AxisRule {
  std::vector<double> eta;
  std::vector<double> w;
};

Complex eval_convolution(const node::Convolution& c, std::span<const double> x, const EvalContext& ctx) {
  const std::size_t d = x.size();
  const double rho = ctx.rho;
  const unsigned n = ctx.quad.nodes_per_axis;
  std::vector<AxisRule> axes(d);
  for (std::size_t i = 0; i < d; ++i) {
    const unsigned a = c.alpha[i];
    const auto& br = i < c.density.breaks.size() ? c.density.breaks[i] : std::vector<double>{};
    AxisRule& ax = axes[i];
    if (ctx.quad.local_substitution) {
      std::vector<double> ub;
      for (double b : br) {
        const double u = (x[i] - b) / rho;
        if (std::abs(u) < 1.0) ub.push_back(u);
      }
      const auto nodes = quad::composite(-1.0, 1.0, std::move(ub), n);
      const double scale = std::pow(rho, -static_cast<double>(a));
      for (std::size_t k = 0; k < nodes.x.size(); ++k) {
        const double wk = nodes.w[k] * c.kernel->psi_derivative(a, nodes.x[k]);
        if (wk == 0.0) continue;
        ax.eta.push_back(x[i] - rho * nodes.x[k]);
        ax.w.push_back(scale * wk);
      }
    } else {
      std::vector<double> eb;
      for (double b : br)
        if (std::abs(x[i] - b) < 1.0) eb.push_back(b);
      const auto nodes = quad::composite(x[i] - 1.0, x[i] + 1.0, std::move(eb), n);
      const double scale = std::pow(rho, -1.0 - static_cast<double>(a));
      for (std::size_t k = 0; k < nodes.x.size(); ++k) {
        const double wk = nodes.w[k] * c.kernel->psi_derivative(a, (x[i] - nodes.x[k]) / rho);
        if (wk == 0.0) continue;
        ax.eta.push_back(nodes.x[k]);
        ax.w.push_back(scale * wk);
      }
    }
    if (ax.eta.empty()) return 0.0;
  }
  std::vector<std::size_t> idx(d, 0);
  std::vector<double> eta(d);
  Complex sum = 0.0;
  while (true) {
    double w = 1.0;
    for (std::size_t i = 0; i < d; ++i) {
      eta[i] = axes[i].eta[idx[i]];
      w *= axes[i].w[idx[i]];
    }
    const Complex g = c.density.value(eta);
    if (!std::isfinite(g.real()) || !std::isfinite(g.imag()))
      throw QuadratureFailure("non-finite density value in convolution");
    sum += w * g;
    std::size_t i = 0;
    while (i < d && ++idx[i] == axes[i].eta.size()) idx[i++] = 0;
    if (i == d) break;
  }
  return sum;
}

}  // namespace

Complex eval_node(const Node& n, std::span<const double> x, const EvalContext& ctx) {
  return std::visit(
      overloaded{
          [&](const node::Standard& s) -> Complex { return s.f.d(s.alpha, x); },
          [&](const node::Scalar& s) -> Complex { return s.c.is_zero() ? Complex(0.0) : s.c.evaluate(ctx.rho); },
          [&](const node::Kernel& k) -> Complex {
            std::vector<double> xi(x.size());
            for (std::size_t i = 0; i < x.size(); ++i) xi[i] = x[i] - k.center[i];
            return k.kernel->eval(k.alpha, xi, ctx.rho);
          },
          [&](const node::Cutoff& c) -> Complex { return c.kernel->cutoff(c.domain, x, ctx.rho, c.alpha); },
          [&](const node::Convolution& c) -> Complex { return eval_convolution(c, x, ctx); },
          [&](const node::Sum& s) -> Complex {
            Complex v = 0.0;
            for (const auto& t : s.terms) v += eval_node(*t, x, ctx);
            return v;
          },
          [&](const node::Product& p) -> Complex {
            Complex v = 1.0;
            for (const auto& f : p.factors) {
              v *= eval_node(*f, x, ctx);
              if (v == Complex(0.0)) break;
            }
            return v;
          },
          [&](const node::ScalarMul& s) -> Complex { return s.c.evaluate(ctx.rho) * eval_node(*s.child, x, ctx); },
          [&](const node::Compose& c) -> Complex { return c.g.d(c.order, eval_node(*c.child, x, ctx)); },
          [&](const node::Pushforward& p) -> Complex {
            const auto y = p.theta.inverse(x);
            return eval_node(*p.child, y, ctx);
          },
      },
      n.v);
}

Complex eval(const GenFunc& f, std::span<const double> x, const EvalContext& ctx) {
  if (!contains(f.domain(), x)) throw OutsideDomain("evaluation point is not in the domain");
  if (!(ctx.rho > 0.0)) throw std::invalid_argument("rho must be positive");
  return eval_node(*f.root(), x, ctx);
}

std::vector<Complex> eval_grid(const GenFunc& f, const std::vector<std::vector<double>>& points, double rho,
                               const QuadConfig& quad, Exec exec) {
  std::vector<Complex> out(points.size());
  const EvalContext ctx{rho, quad, 0.0};
  sweep_for(points.size(), [&](std::size_t i) { out[i] = eval(f, points[i], ctx); }, exec);
  return out;
}

std::vector<Complex> eval_grid(const GenFunc& f, const std::vector<NearStandardPoint>& pts,
                               const std::vector<double>& rho_grid, const QuadConfig& quad, Exec exec) {
  const std::size_t nr = rho_grid.size();
  std::vector<Complex> out(pts.size() * nr);
  sweep_for(
      out.size(),
      [&](std::size_t i) {
        const double rho = rho_grid[i % nr];
        const auto x = pts[i / nr].at(rho);
        out[i] = eval(f, x, EvalContext{rho, quad, 0.0});
      },
      exec);
  return out;
}

MonadComparison compare_on_monad(const GenFunc& f, const GenFunc& g, const std::vector<NearStandardPoint>& pts,
                                 const std::vector<double>& rho_grid, double tol, const QuadConfig& quad, Exec exec) {
  if (!(f.domain() == g.domain())) throw DomainMismatch("compared functions live on different domains");
  MonadComparison r;
  const auto rhos = rho_below_threshold(f.domain(), pts, rho_grid);
  r.rho_used = rhos.size();
  if (rhos.empty() || pts.empty()) return r;
  const GenFunc diff = f - g;
  const auto vals = eval_grid(diff, pts, rhos, quad, exec);
  bool finite = true;
  for (std::size_t i = 0; i < vals.size(); ++i) {
    const double a = std::abs(vals[i]);
    if (!std::isfinite(a)) finite = false;
    if (!(a <= r.max_abs_diff)) {
      r.max_abs_diff = a;
      r.worst_rho = rhos[i % rhos.size()];
      r.worst_point = pts[i / rhos.size()].at(r.worst_rho);
    }
  }
  r.equal = finite && r.max_abs_diff <= tol;
  return r;
}

bool equals_on_monad(const GenFunc& f, const GenFunc& g, const std::vector<NearStandardPoint>& pts,
                     const std::vector<double>& rho_grid, double tol, const QuadConfig& quad) {
  return compare_on_monad(f, g, pts, rho_grid, tol, quad).equal;
}

namespace {

void collect(const Node& n, double rho, std::size_t d, Features& out) {
  std::visit(overloaded{
                 [&](const node::Standard& s) {
                   for (std::size_t i = 0; i < s.f.factors.size() && i < d; ++i)
                     out.axis_breaks[i].insert(out.axis_breaks[i].end(), s.f.factors[i].breaks.begin(),
                                               s.f.factors[i].breaks.end());
                 },
                 [&](const node::Scalar&) {},
                 [&](const node::Kernel& k) {
                   out.points.push_back(k.center);
                   for (std::size_t i = 0; i < d; ++i)
                     out.axis_breaks[i].insert(out.axis_breaks[i].end(),
                                               {k.center[i] - rho, k.center[i], k.center[i] + rho});
                 },
                 [&](const node::Cutoff& c) {
                   for (const auto& b : shrink_clip(c.domain, 3.0 * rho).boxes)
                     for (std::size_t i = 0; i < d; ++i)
                       out.axis_breaks[i].insert(out.axis_breaks[i].end(),
                                                 {b.axes[i].lo - rho, b.axes[i].lo + rho, b.axes[i].hi - rho,
                                                  b.axes[i].hi + rho});
                 },
                 [&](const node::Convolution& c) {
                   for (std::size_t i = 0; i < d && i < c.density.breaks.size(); ++i)
                     for (double b : c.density.breaks[i]) {
                       out.axis_breaks[i].insert(out.axis_breaks[i].end(), {b - rho, b, b + rho});
                       if (d == 1) out.points.push_back({b});
                     }
                 },
                 [&](const node::Sum& s) {
                   for (const auto& t : s.terms) collect(*t, rho, d, out);
                 },
                 [&](const node::Product& p) {
                   for (const auto& t : p.factors) collect(*t, rho, d, out);
                 },
                 [&](const node::ScalarMul& s) { collect(*s.child, rho, d, out); },
                 [&](const node::Compose& c) { collect(*c.child, rho, d, out); },
                 [&](const node::Pushforward& p) {
                   Features inner;
                   inner.axis_breaks.assign(d, {});
                   collect(*p.child, rho, d, inner);
                   for (const auto& pt : inner.points) out.points.push_back(p.theta.forward(pt));
                   if (p.theta.axis_wise())
                     for (std::size_t i = 0; i < d; ++i)
                       for (double b : inner.axis_breaks[i]) out.axis_breaks[i].push_back(p.theta.axis_forward[i](b));
                 },
             },
             n.v);
}

unsigned power_of(const Node& n) {
  return std::visit(overloaded{
                        [](const node::Kernel&) -> unsigned { return 1; },
                        [](const node::Sum& s) -> unsigned {
                          unsigned m = 0;
                          for (const auto& t : s.terms) m = std::max(m, power_of(*t));
                          return m;
                        },
                        [](const node::Product& p) -> unsigned {
                          unsigned m = 0;
                          for (const auto& t : p.factors) m += power_of(*t);
                          return m;
                        },
                        [](const node::ScalarMul& s) -> unsigned { return power_of(*s.child); },
                        [](const node::Pushforward& p) -> unsigned { return power_of(*p.child); },
                        [](const auto&) -> unsigned { return 0; },
                    },
                    n.v);
}

}  // namespace

Features features(const GenFunc& f, double rho) {
  Features out;
  out.axis_breaks.assign(f.dim(), {});
  collect(*f.root(), rho, f.dim(), out);
  for (auto& b : out.axis_breaks) {
    std::sort(b.begin(), b.end());
    b.erase(std::unique(b.begin(), b.end()), b.end());
  }
  return out;
}

unsigned kernel_power(const GenFunc& f) { return power_of(*f.root()); }

std::vector<Box> support_estimate(const GenFunc& f, const Box& window, double grid_step,
                                  const std::vector<double>& rho_grid, double tol, const QuadConfig& quad) {
  if (!(grid_step > 0.0)) throw std::invalid_argument("grid_step must be positive");
  if (!window.bounded() || window.dim() != f.dim()) throw std::invalid_argument("support scan needs a bounded window");
  const std::size_t d = f.dim();
  std::vector<std::size_t> counts(d);
  std::size_t total = 1;
  for (std::size_t i = 0; i < d; ++i) {
    counts[i] = static_cast<std::size_t>(std::ceil(window.axes[i].width() / grid_step - 1e-9));
    total *= counts[i];
  }
  std::vector<std::vector<std::vector<double>>> feature_pts;
  for (double rho : rho_grid) feature_pts.push_back(features(f, rho).points);

  std::vector<char> hit(total, 0);
  sweep_for(total, [&](std::size_t c) {
    Box cell;
    std::size_t rem = c;
    std::vector<double> center(d);
    for (std::size_t i = 0; i < d; ++i) {
      const std::size_t k = rem % counts[i];
      rem /= counts[i];
      const double lo = window.axes[i].lo + grid_step * static_cast<double>(k);
      cell.axes.push_back({lo, std::min(lo + grid_step, window.axes[i].hi)});
      center[i] = 0.5 * (cell.axes[i].lo + cell.axes[i].hi);
    }
    for (std::size_t r = 0; r < rho_grid.size() && !hit[c]; ++r) {
      std::vector<std::vector<double>> pts{center};
      for (const auto& p : feature_pts[r])
        if (cell.contains_closed(p)) pts.push_back(p);
      for (const auto& p : pts) {
        if (!contains(f.domain(), p)) continue;
        const double v = std::abs(eval(f, p, EvalContext{rho_grid[r], quad, tol}));
        if (!(v <= tol)) {
          hit[c] = 1;
          break;
        }
      }
    }
  });
  std::vector<Box> out;
  for (std::size_t c = 0; c < total; ++c) {
    if (!hit[c]) continue;
    Box cell;
    std::size_t rem = c;
    for (std::size_t i = 0; i < d; ++i) {
      const std::size_t k = rem % counts[i];
      rem /= counts[i];
      const double lo = window.axes[i].lo + grid_step * static_cast<double>(k);
      cell.axes.push_back({lo, std::min(lo + grid_step, window.axes[i].hi)});
    }
    out.push_back(std::move(cell));
  }
  return out;
}

void to_json(nlohmann::json& j, const Node& n) {
  std::visit(overloaded{
                 [&](const node::Standard& s) { j = {{"kind", "standard"}, {"f", s.f}, {"alpha", s.alpha.values()}}; },
                 [&](const node::Scalar& s) { j = {{"kind", "scalar"}, {"c", s.c}}; },
                 [&](const node::Kernel& k) {
                   j = {{"kind", "kernel"}, {"m", k.kernel->m()}, {"alpha", k.alpha.values()}, {"center", k.center}};
                 },
                 [&](const node::Cutoff& c) {
                   j = {{"kind", "cutoff"}, {"m", c.kernel->m()}, {"domain", c.domain}, {"alpha", c.alpha.values()}};
                 },
                 [&](const node::Convolution& c) {
                   j = {{"kind", "convolution"}, {"m", c.kernel->m()}, {"density", c.density}, {"alpha", c.alpha.values()}};
                 },
                 [&](const node::Sum& s) {
                   j = {{"kind", "sum"}, {"terms", nlohmann::json::array()}};
                   for (const auto& t : s.terms) j["terms"].push_back(*t);
                 },
                 [&](const node::Product& p) {
                   j = {{"kind", "product"}, {"factors", nlohmann::json::array()}};
                   for (const auto& t : p.factors) j["factors"].push_back(*t);
                 },
                 [&](const node::ScalarMul& s) { j = {{"kind", "scalar_mul"}, {"c", s.c}, {"child", *s.child}}; },
                 [&](const node::Compose& c) {
                   j = {{"kind", "compose"}, {"g", c.g.name}, {"order", c.order}, {"child", *c.child}};
                 },
                 [&](const node::Pushforward& p) {
                   j = {{"kind", "pushforward"}, {"theta", p.theta.name}, {"child", *p.child}};
                 },
             },
             n.v);
}

void to_json(nlohmann::json& j, const GenFunc& f) { j = {{"domain", f.domain()}, {"expr", *f.root()}}; }

}  // namespace egorov
