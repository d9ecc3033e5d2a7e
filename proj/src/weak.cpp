#include "egorov/weak.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <Eigen/Dense>
#include <nlohmann/json.hpp>

#include "egorov/quadrature.hpp"

namespace egorov {

namespace {

double window_mass() {
  static const double mass = [] {
    const auto& r = quad::gauss_legendre(256);
    double s = 0.0;
    for (std::size_t k = 0; k < r.nodes.size(); ++k) s += r.weights[k] * bump_window(r.nodes[k]);
    return s;
  }();
  return mass;
}

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

unsigned vanishing_order_of(const Node& n) {
  return std::visit(overloaded{
                        [](const node::Kernel& k) { return k.kernel->vanishing_order(); },
                        [](const node::Cutoff& c) { return c.kernel->vanishing_order(); },
                        [](const node::Convolution& c) { return c.kernel->vanishing_order(); },
                        [](const node::Sum& s) {
                          unsigned q = 0;
                          for (const auto& t : s.terms) q = std::max(q, vanishing_order_of(*t));
                          return q;
                        },
                        [](const node::Product& p) {
                          unsigned q = 0;
                          for (const auto& t : p.factors) q = std::max(q, vanishing_order_of(*t));
                          return q;
                        },
                        [](const node::ScalarMul& s) { return vanishing_order_of(*s.child); },
                        [](const node::Compose& c) { return vanishing_order_of(*c.child); },
                        [](const node::Pushforward& p) { return vanishing_order_of(*p.child); },
                        [](const auto&) { return 0u; },
                    },
                    n.v);
}

std::vector<Rational> default_dictionary(const GenFunc& f, std::size_t n_samples) {
  unsigned q = vanishing_order_of(*f.root());
  if (q == 0) q = 5;
  const int lower = -static_cast<int>(f.dim() * kernel_power(f));
  return exponent_dictionary(lower, static_cast<int>(q) + 2, n_samples);
}

std::vector<quad::Nodes1D> panel_rules(const GenFunc& f, const Box& box, const std::vector<std::vector<double>>& extra,
                                       double rho, unsigned n) {
  const auto feats = features(f, rho);
  std::vector<quad::Nodes1D> axes;
  for (std::size_t i = 0; i < box.dim(); ++i) {
    std::vector<double> br = feats.axis_breaks[i];
    if (i < extra.size()) br.insert(br.end(), extra[i].begin(), extra[i].end());
    axes.push_back(quad::composite(box.axes[i].lo, box.axes[i].hi, std::move(br), n));
  }
  return axes;
}

Complex tensor_integral(const GenFunc& f, const std::vector<quad::Nodes1D>& axes, double rho, const QuadConfig& q,
                        const std::function<double(std::span<const double>)>& weight) {
  const std::size_t d = axes.size();
  for (const auto& a : axes)
    if (a.x.empty()) return 0.0;
  std::vector<std::size_t> idx(d, 0);
  std::vector<double> x(d);
  const EvalContext ctx{rho, q, 0.0};
  Complex acc = 0.0;
  while (true) {
    double w = 1.0;
    for (std::size_t i = 0; i < d; ++i) {
      x[i] = axes[i].x[idx[i]];
      w *= axes[i].w[idx[i]];
    }
    const double wt = w * weight(x);
    if (wt != 0.0) {
      const Complex v = eval_node(*f.root(), x, ctx);
      if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
        throw QuadratureFailure("non-finite integrand in pairing");
      acc += wt * v;
    }
    std::size_t i = 0;
    while (i < d && ++idx[i] == axes[i].x.size()) idx[i++] = 0;
    if (i == d) break;
  }
  return acc;
}

std::vector<std::vector<double>> phi_breaks(const TestFunction& phi, unsigned panels) {
  std::vector<std::vector<double>> br(phi.support.dim());
  for (std::size_t i = 0; i < phi.phi.factors.size() && i < br.size(); ++i) br[i] = phi.phi.factors[i].breaks;
  for (std::size_t i = 0; i < br.size(); ++i) {
    const Interval& iv = phi.support.axes[i];
    for (unsigned k = 1; k < panels; ++k) br[i].push_back(iv.lo + iv.width() * k / panels);
  }
  return br;
}

void check_inside(const GenFunc& f, const Box& box, double margin) {
  if (box.dim() != f.dim()) throw DimensionMismatch("test function dimension does not match domain");
  if (!f.domain().includes_with_margin(Region{f.dim(), {box}}, margin))
    throw std::invalid_argument("integration box is not inside the domain with margin above max rho");
}

}  // namespace

TestFunction bump_test_function(double c, double s) {
  Smooth1D b = Smooth1D::scaled(1.0 / (s * window_mass()), Smooth1D::bump(c, s));
  b.name = "nbump(" + std::to_string(c).substr(0, 6) + "," + std::to_string(s).substr(0, 6) + ")";
  return {b.name, StandardFunction::separable({b}), Box{{Interval{c - s, c + s}}}};
}

TestFunction bump_monomial_test_function(double c, double s, unsigned k) {
  std::vector<double> mono(k + 1, 0.0);
  mono[k] = 1.0;
  Smooth1D b = Smooth1D::product(Smooth1D::bump(c, s), Smooth1D::polynomial(mono));
  b.name = "bump(" + std::to_string(c).substr(0, 6) + "," + std::to_string(s).substr(0, 6) + ")*x^" + std::to_string(k);
  return {b.name, StandardFunction::separable({b}), Box{{Interval{c - s, c + s}}}};
}

std::vector<TestFunction> default_test_suite(std::size_t dim) {
  static const std::vector<std::pair<double, double>> bumps = {{0.0, 0.5},  {0.0, 1.0},   {0.2, 0.3},
                                                               {-0.3, 0.4}, {0.5, 0.4},   {-0.5, 0.3},
                                                               {0.1, 0.7},  {-0.15, 0.6}, {0.35, 0.5}};
  std::vector<TestFunction> one;
  for (const auto& [c, s] : bumps) one.push_back(bump_test_function(c, s));
  for (unsigned k = 0; k < 3; ++k) one.push_back(bump_monomial_test_function(0.1, 0.8, k));
  if (dim == 1) return one;
  std::vector<TestFunction> out;
  for (std::size_t k = 0; k < one.size(); ++k) {
    std::vector<Smooth1D> fs;
    Box sup;
    std::string id;
    for (std::size_t i = 0; i < dim; ++i) {
      const auto& e = one[(k + i) % one.size()];
      fs.push_back(e.phi.factors[0]);
      sup.axes.push_back(e.support.axes[0]);
      id += (i ? " x " : "") + e.id;
    }
    out.push_back({id, StandardFunction::separable(std::move(fs)), std::move(sup)});
  }
  return out;
}

TestFunction derive(const TestFunction& phi, const MultiIndex& alpha) {
  TestFunction out = phi;
  out.id = "d" + to_string(alpha) + phi.id;
  auto fd = phi.phi.d;
  out.phi.name = out.id;
  out.phi.d = [fd, alpha](const MultiIndex& a, std::span<const double> x) { return fd(a + alpha, x); };
  out.phi.poly.reset();
  return out;
}

TestFunction translate(const TestFunction& phi, const std::vector<double>& shift) {
  if (shift.size() != phi.phi.dim) throw DimensionMismatch("shift dimension does not match test function");
  TestFunction out = phi;
  std::string s;
  for (std::size_t i = 0; i < shift.size(); ++i) s += (i ? "," : "") + std::to_string(shift[i]);
  out.id = phi.id + "+(" + s + ")";
  out.phi.name = out.id;
  auto fd = phi.phi.d;
  out.phi.d = [fd, shift](const MultiIndex& a, std::span<const double> x) {
    std::vector<double> y(x.begin(), x.end());
    for (std::size_t i = 0; i < y.size(); ++i) y[i] -= shift[i];
    return fd(a, y);
  };
  out.phi.poly.reset();
  for (std::size_t i = 0; i < out.phi.factors.size() && i < shift.size(); ++i) {
    auto& f = out.phi.factors[i];
    auto g = f.d;
    const double c = shift[i];
    f.d = [g, c](unsigned n, double t) { return g(n, t - c); };
    f.support = Interval{f.support.lo + c, f.support.hi + c};
    for (double& b : f.breaks) b += c;
  }
  for (std::size_t i = 0; i < shift.size(); ++i)
    out.support.axes[i] = Interval{phi.support.axes[i].lo + shift[i], phi.support.axes[i].hi + shift[i]};
  return out;
}

Complex AsymptoticFit::coefficient(const Rational& e) const {
  for (std::size_t k = 0; k < dictionary.size(); ++k)
    if (dictionary[k] == e) return coefficients[k];
  return 0.0;
}

std::vector<Rational> exponent_dictionary(int lower, int upper, std::size_t n_samples) {
  const int top = std::min(upper, lower + static_cast<int>(n_samples) - 3);
  std::vector<Rational> out;
  for (int e = lower; e <= top; ++e) out.emplace_back(e);
  return out;
}

std::vector<double> dyadic_rho_grid(int j_min, int j_max) {
  std::vector<double> out;
  for (int j = j_min; j <= j_max; ++j) out.push_back(std::ldexp(1.0, -j));
  return out;
}

AsymptoticFit fit_asymptotics(const std::vector<std::pair<double, Complex>>& samples,
                              const std::vector<Rational>& dictionary, const FitOptions& opts) {
  const std::size_t n = samples.size(), k = dictionary.size();
  if (k == 0) throw std::invalid_argument("empty exponent dictionary");
  if (n < k + 2) throw std::invalid_argument("fit needs at least two more samples than exponents");
  AsymptoticFit fit;
  fit.samples = samples;
  fit.dictionary = dictionary;

  Eigen::MatrixXd A(n, k);
  Eigen::MatrixXd b(n, 2);
  double vmax = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double rho = samples[i].first;
    if (!(rho > 0.0)) throw std::invalid_argument("fit samples need positive rho");
    for (std::size_t c = 0; c < k; ++c) A(i, c) = std::pow(rho, to_double(dictionary[c]));
    b(i, 0) = samples[i].second.real();
    b(i, 1) = samples[i].second.imag();
    vmax = std::max(vmax, std::abs(samples[i].second));
  }
  if (!std::isfinite(vmax) || !A.allFinite()) {
    fit.coefficients.assign(k, Complex(0.0));
    fit.residual = std::numeric_limits<double>::infinity();
    return fit;
  }
  Eigen::VectorXd scale(k);
  for (std::size_t c = 0; c < k; ++c) {
    scale(c) = A.col(c).cwiseAbs().maxCoeff();
    A.col(c) /= scale(c);
  }
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(A);
  qr.setThreshold(1e-14);
  const Eigen::MatrixXd sol = qr.solve(b);
  const Eigen::MatrixXd r = A * sol - b;
  double rmax = 0.0;
  for (Eigen::Index i = 0; i < r.rows(); ++i) rmax = std::max(rmax, std::hypot(r(i, 0), r(i, 1)));
  fit.residual = vmax > 0.0 ? rmax / vmax : 0.0;
  fit.reliable = qr.rank() == static_cast<Eigen::Index>(k) && fit.residual <= opts.residual_threshold;

  std::vector<AsymptoticScalar::Term> kept;
  for (std::size_t c = 0; c < k; ++c) {
    const Complex coef(sol(c, 0) / scale(c), sol(c, 1) / scale(c));
    fit.coefficients.push_back(coef);
    const double contribution = std::abs(coef) * scale(c);
    if (coef != Complex(0.0) && contribution > opts.prune_fraction * vmax) kept.push_back({dictionary[c], coef});
  }
  fit.fitted_terms = AsymptoticScalar(std::move(kept), dictionary.back() + Rational(1));

  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  std::size_t m = 0;
  for (const auto& [rho, v] : samples) {
    const double a = std::abs(v);
    if (!(a > 0.0)) continue;
    const double lx = std::log(rho), ly = std::log(a);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
    ++m;
  }
  if (m >= 2) fit.slope = (m * sxy - sx * sy) / (m * sxx - sx * sx);
  return fit;
}

std::vector<Complex> pair_values(const GenFunc& f, const TestFunction& phi, const std::vector<double>& rho_grid,
                                 const PairOptions& opts) {
  return pair_grid(f, {phi}, rho_grid, opts);
}

std::vector<Complex> pair_grid(const GenFunc& f, const std::vector<TestFunction>& suite,
                               const std::vector<double>& rho_grid, const PairOptions& opts) {
  if (rho_grid.empty()) return {};
  const double rho_max = *std::max_element(rho_grid.begin(), rho_grid.end());
  for (const auto& phi : suite) check_inside(f, phi.support, rho_max);
  const std::size_t nr = rho_grid.size();
  std::vector<Complex> out(suite.size() * nr);
  sweep_for(
      out.size(),
      [&](std::size_t i) {
        const TestFunction& phi = suite[i / nr];
        const double rho = rho_grid[i % nr];
        const auto axes = panel_rules(f, phi.support, phi_breaks(phi, opts.panels), rho, opts.nodes_per_panel);
        out[i] = tensor_integral(f, axes, rho, opts.quad, [&](std::span<const double> x) { return phi.phi(x); });
      },
      opts.exec);
  return out;
}

namespace {

AsymptoticFit fit_values(const GenFunc& f, const std::vector<double>& rho_grid, const std::vector<Complex>& vals,
                         const PairOptions& opts) {
  std::vector<std::pair<double, Complex>> samples;
  for (std::size_t i = 0; i < rho_grid.size(); ++i) samples.emplace_back(rho_grid[i], vals[i]);
  const auto dict = opts.dictionary ? *opts.dictionary : default_dictionary(f, samples.size());
  return fit_asymptotics(samples, dict, opts.fit);
}

}  // namespace

AsymptoticFit pair(const GenFunc& f, const TestFunction& phi, const std::vector<double>& rho_grid,
                   const PairOptions& opts) {
  return fit_values(f, rho_grid, pair_values(f, phi, rho_grid, opts), opts);
}

AsymptoticFit integrate_region(const GenFunc& f, const Region& X, const std::vector<double>& rho_grid,
                               const PairOptions& opts) {
  if (X.dim != f.dim()) throw DimensionMismatch("region dimension does not match domain");
  if (rho_grid.empty()) throw std::invalid_argument("empty rho grid");
  const double rho_max = *std::max_element(rho_grid.begin(), rho_grid.end());
  for (const auto& b : X.boxes) {
    if (!b.bounded()) throw std::invalid_argument("integration region must be bounded");
    check_inside(f, b, rho_max);
  }
  std::vector<Complex> vals(rho_grid.size());
  sweep_for(
      rho_grid.size(),
      [&](std::size_t r) {
        Complex s = 0.0;
        for (const auto& b : X.boxes) {
          const auto axes = panel_rules(f, b, {}, rho_grid[r], opts.nodes_per_panel);
          s += tensor_integral(f, axes, rho_grid[r], opts.quad, [](std::span<const double>) { return 1.0; });
        }
        vals[r] = s;
      },
      opts.exec);
  return fit_values(f, rho_grid, vals, opts);
}

const char* to_string(Association a) {
  switch (a) {
    case Association::associated: return "associated";
    case Association::not_associated: return "not_associated";
    case Association::indeterminate: return "indeterminate";
  }
  return "?";
}

AssociationReport associated(const GenFunc& f, const GenFunc& g, const std::vector<TestFunction>& suite,
                             const std::vector<double>& rho_grid, double tol, const PairOptions& opts) {
  if (!(f.domain() == g.domain())) throw DomainMismatch("association needs a shared domain");
  const GenFunc diff = f - g;
  const auto vals = pair_grid(diff, suite, rho_grid, opts);
  const std::size_t nr = rho_grid.size();
  AssociationReport rep;
  bool any_false = false, any_indet = false;
  for (std::size_t p = 0; p < suite.size(); ++p) {
    AssociationReport::PerPhi row;
    row.phi_id = suite[p].id;
    std::vector<Complex> v(vals.begin() + static_cast<std::ptrdiff_t>(p * nr),
                           vals.begin() + static_cast<std::ptrdiff_t>((p + 1) * nr));
    for (const auto& z : v) row.max_abs_value = std::max(row.max_abs_value, std::abs(z));
    if (!std::isfinite(row.max_abs_value)) {
      row.verdict = Association::indeterminate;
    } else if (row.max_abs_value <= tol) {
      row.verdict = Association::associated;
    } else {
      const auto fit = fit_values(diff, rho_grid, v, opts);
      row.residual = fit.residual;
      row.standard_part = fit.coefficient(Rational(0));
      for (std::size_t k = 0; k < fit.dictionary.size(); ++k)
        if (fit.dictionary[k] <= Rational(0))
          row.max_nonpositive_coeff = std::max(row.max_nonpositive_coeff, std::abs(fit.coefficients[k]));
      if (!fit.reliable)
        row.verdict = Association::indeterminate;
      else
        row.verdict = row.max_nonpositive_coeff <= tol ? Association::associated : Association::not_associated;
    }
    any_false |= row.verdict == Association::not_associated;
    any_indet |= row.verdict == Association::indeterminate;
    rep.per_phi.push_back(std::move(row));
  }
  rep.verdict = any_false ? Association::not_associated
                          : (any_indet ? Association::indeterminate : Association::associated);
  return rep;
}

void to_json(nlohmann::json& j, const AsymptoticFit& f) {
  nlohmann::json ex = nlohmann::json::array(), co = nlohmann::json::array();
  for (std::size_t k = 0; k < f.dictionary.size(); ++k) {
    ex.push_back(to_string(f.dictionary[k]));
    co.push_back({f.coefficients[k].real(), f.coefficients[k].imag()});
  }
  j = {{"exponents", ex},         {"coefficients", co}, {"fitted_terms", f.fitted_terms},
       {"residual", f.residual}, {"reliable", f.reliable}, {"slope", f.slope}};
}

void to_json(nlohmann::json& j, const AssociationReport& r) {
  j = {{"verdict", to_string(r.verdict)}, {"per_phi", nlohmann::json::array()}};
  for (const auto& p : r.per_phi)
    j["per_phi"].push_back({{"phi", p.phi_id},
                            {"verdict", to_string(p.verdict)},
                            {"max_abs_value", p.max_abs_value},
                            {"max_nonpositive_coeff", p.max_nonpositive_coeff},
                            {"standard_part", {p.standard_part.real(), p.standard_part.imag()}},
                            {"residual", p.residual}});
}

}  // namespace egorov
