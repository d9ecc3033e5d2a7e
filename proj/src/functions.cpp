#include "egorov/functions.hpp"

#include <cmath>
#include <sstream>

#include "egorov/mollifier.hpp"

namespace egorov {

namespace {

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(12);
  os << v;
  return os.str();
}

// d^n/dt^n of sin(a t + b) is a^n sin(a t + b + n pi/2).
double sin_derivative(unsigned n, double a, double b, double t) {
  return std::pow(a, n) * std::sin(a * t + b + 0.5 * M_PI * n);
}

}  // namespace

Smooth1D Smooth1D::constant(double c) {
  return {fmt(c), [c](unsigned n, double) { return n == 0 ? c : 0.0; }, {}, {}};
}

Smooth1D Smooth1D::sin(double a, double b) {
  return {"sin(" + fmt(a) + "t+" + fmt(b) + ")", [a, b](unsigned n, double t) { return sin_derivative(n, a, b, t); },
          {}, {}};
}

Smooth1D Smooth1D::cos(double a, double b) {
  return {"cos(" + fmt(a) + "t+" + fmt(b) + ")",
          [a, b](unsigned n, double t) { return sin_derivative(n, a, b + 0.5 * M_PI, t); }, {}, {}};
}

Smooth1D Smooth1D::exp(double a, double b) {
  return {"exp(" + fmt(a) + "t+" + fmt(b) + ")",
          [a, b](unsigned n, double t) { return std::pow(a, n) * std::exp(a * t + b); }, {}, {}};
}

Smooth1D Smooth1D::polynomial(const std::vector<double>& coeffs) {
  const Polynomial p = Polynomial::univariate(coeffs);
  return {"poly" + to_string(p),
          [p](unsigned n, double t) {
            const double x[1] = {t};
            return p.derive(MultiIndex({n}))(x);
          },
          {}, {}};
}

Smooth1D Smooth1D::bump(double c, double s) {
  if (!(s > 0.0)) throw std::invalid_argument("bump scale must be positive");
  return {"bump(" + fmt(c) + "," + fmt(s) + ")",
          [c, s](unsigned n, double t) { return std::pow(s, -static_cast<double>(n)) * bump_window_derivative(n, (t - c) / s); },
          {c - s, c + s}, {c - s, c + s}};
}

Smooth1D Smooth1D::scaled(double k, const Smooth1D& f) {
  auto g = f.d;
  return {fmt(k) + "*" + f.name, [k, g](unsigned n, double t) { return k * g(n, t); }, f.support, f.breaks};
}

Smooth1D Smooth1D::product(const Smooth1D& f, const Smooth1D& g) {
  auto fd = f.d, gd = g.d;
  Interval sup{std::max(f.support.lo, g.support.lo), std::min(f.support.hi, g.support.hi)};
  auto br = f.breaks;
  br.insert(br.end(), g.breaks.begin(), g.breaks.end());
  return {f.name + "*" + g.name,
          [fd, gd](unsigned n, double t) {
            double s = 0.0;
            for (unsigned k = 0; k <= n; ++k) s += binomial(n, k) * fd(k, t) * gd(n - k, t);
            return s;
          },
          sup, br};
}

StandardFunction StandardFunction::polynomial(Polynomial p) {
  StandardFunction f;
  f.dim = p.dim();
  f.name = to_string(p);
  f.d = [p](const MultiIndex& a, std::span<const double> x) { return a.is_zero() ? p(x) : p.derive(a)(x); };
  f.poly = std::move(p);
  return f;
}

StandardFunction StandardFunction::constant(std::size_t dim, double c) {
  return polynomial(Polynomial::constant(dim, c));
}

StandardFunction StandardFunction::coordinate(std::size_t dim, std::size_t axis) {
  return polynomial(Polynomial::coordinate(dim, axis));
}

StandardFunction StandardFunction::separable(std::vector<Smooth1D> factors) {
  if (factors.empty()) throw std::invalid_argument("separable function needs at least one factor");
  StandardFunction f;
  f.dim = factors.size();
  for (std::size_t i = 0; i < factors.size(); ++i) f.name += (i ? " x " : "") + factors[i].name;
  f.d = [factors](const MultiIndex& a, std::span<const double> x) {
    double v = 1.0;
    for (std::size_t i = 0; i < factors.size() && v != 0.0; ++i) v *= factors[i].d(a[i], x[i]);
    return v;
  };
  f.factors = std::move(factors);
  return f;
}

StandardFunction StandardFunction::on_axis(std::size_t dim, std::size_t axis, const Smooth1D& g) {
  std::vector<Smooth1D> fs(dim, Smooth1D::constant(1.0));
  fs.at(axis) = g;
  return separable(std::move(fs));
}

StandardFunction StandardFunction::product(const StandardFunction& f, const StandardFunction& g) {
  if (f.dim != g.dim) throw std::invalid_argument("standard function dimension mismatch");
  if (f.poly && g.poly) return polynomial(*f.poly * *g.poly);
  StandardFunction h;
  h.dim = f.dim;
  h.name = "(" + f.name + ")*(" + g.name + ")";
  auto fd = f.d, gd = g.d;
  h.d = [fd, gd](const MultiIndex& a, std::span<const double> x) {
    double s = 0.0;
    for (const auto& b : sub_indices(a)) s += multi_binomial(a, b) * fd(b, x) * gd(a - b, x);
    return s;
  };
  return h;
}

StandardFunction StandardFunction::sum(const StandardFunction& f, const StandardFunction& g) {
  if (f.dim != g.dim) throw std::invalid_argument("standard function dimension mismatch");
  if (f.poly && g.poly) return polynomial(*f.poly + *g.poly);
  StandardFunction h;
  h.dim = f.dim;
  h.name = "(" + f.name + ")+(" + g.name + ")";
  auto fd = f.d, gd = g.d;
  h.d = [fd, gd](const MultiIndex& a, std::span<const double> x) { return fd(a, x) + gd(a, x); };
  return h;
}

UnaryFunction UnaryFunction::exp() {
  return {"exp", [](unsigned, Complex y) { return std::exp(y); }};
}

UnaryFunction UnaryFunction::sin() {
  return {"sin", [](unsigned n, Complex y) {
            switch (n % 4) {
              case 0: return std::sin(y);
              case 1: return std::cos(y);
              case 2: return -std::sin(y);
              default: return -std::cos(y);
            }
          }};
}

UnaryFunction UnaryFunction::cos() {
  return {"cos", [](unsigned n, Complex y) {
            switch (n % 4) {
              case 0: return std::cos(y);
              case 1: return -std::sin(y);
              case 2: return -std::cos(y);
              default: return std::sin(y);
            }
          }};
}

UnaryFunction UnaryFunction::power(unsigned k) {
  return {"pow" + std::to_string(k), [k](unsigned n, Complex y) {
            if (n > k) return Complex(0.0);
            double c = 1.0;
            for (unsigned j = 0; j < n; ++j) c *= static_cast<double>(k - j);
            return c * std::pow(y, static_cast<int>(k - n));
          }};
}

const char* to_string(DensityClass c) {
  switch (c) {
    case DensityClass::continuous: return "continuous";
    case DensityClass::smooth: return "smooth";
    case DensityClass::locally_integrable: return "locally_integrable";
    case DensityClass::polynomial: return "polynomial";
  }
  return "?";
}

DensityClass density_class_from_string(const std::string& s) {
  if (s == "continuous") return DensityClass::continuous;
  if (s == "smooth") return DensityClass::smooth;
  if (s == "locally_integrable") return DensityClass::locally_integrable;
  if (s == "polynomial") return DensityClass::polynomial;
  throw std::invalid_argument("unknown density class '" + s + "'");
}

Density Density::polynomial(Polynomial p) {
  Density g;
  g.dim = p.dim();
  g.name = to_string(p);
  g.cls = DensityClass::polynomial;
  g.value = [p](std::span<const double> x) { return Complex(p(x)); };
  g.breaks.assign(g.dim, {});
  g.poly = std::move(p);
  return g;
}

Density Density::from_standard(const StandardFunction& f) {
  if (f.poly) return polynomial(*f.poly);
  Density g;
  g.dim = f.dim;
  g.name = f.name;
  g.cls = DensityClass::smooth;
  auto fd = f.d;
  const std::size_t dim = f.dim;
  g.value = [fd, dim](std::span<const double> x) { return Complex(fd(MultiIndex(dim), x)); };
  g.breaks.assign(dim, {});
  for (std::size_t i = 0; i < f.factors.size(); ++i) g.breaks[i] = f.factors[i].breaks;
  return g;
}

Density Density::heaviside(std::size_t dim, std::size_t axis, double a) {
  if (axis >= dim) throw std::invalid_argument("heaviside axis out of range");
  std::vector<std::vector<double>> br(dim);
  br[axis] = {a};
  return custom("H(x" + std::to_string(axis) + "-" + fmt(a) + ")", DensityClass::locally_integrable, dim,
                [axis, a](std::span<const double> x) { return Complex(x[axis] > a ? 1.0 : 0.0); }, std::move(br));
}

Density Density::custom(std::string name, DensityClass cls, std::size_t dim,
                        std::function<Complex(std::span<const double>)> value,
                        std::vector<std::vector<double>> breaks) {
  Density g;
  g.dim = dim;
  g.name = std::move(name);
  g.cls = cls;
  g.value = std::move(value);
  g.breaks = std::move(breaks);
  g.breaks.resize(dim);
  return g;
}

Density Density::times(const StandardFunction& f, const Density& g) {
  if (f.dim != g.dim) throw std::invalid_argument("density dimension mismatch");
  if (f.poly && g.poly) return polynomial(*f.poly * *g.poly);
  Density h = g;
  h.name = "(" + f.name + ")*(" + g.name + ")";
  h.poly.reset();
  if (h.cls == DensityClass::polynomial) h.cls = DensityClass::smooth;
  auto fd = f.d;
  auto gv = g.value;
  const std::size_t dim = f.dim;
  h.value = [fd, gv, dim](std::span<const double> x) { return fd(MultiIndex(dim), x) * gv(x); };
  for (std::size_t i = 0; i < f.factors.size() && i < h.breaks.size(); ++i)
    h.breaks[i].insert(h.breaks[i].end(), f.factors[i].breaks.begin(), f.factors[i].breaks.end());
  return h;
}

void to_json(nlohmann::json& j, const Smooth1D& f) {
  j = {{"name", f.name}, {"support", f.support}};
}

void to_json(nlohmann::json& j, const StandardFunction& f) {
  j = {{"name", f.name}, {"dim", f.dim}};
  if (f.poly) j["polynomial"] = *f.poly;
}

void to_json(nlohmann::json& j, const Density& g) {
  j = {{"name", g.name}, {"dim", g.dim}, {"class", to_string(g.cls)}, {"breaks", g.breaks}};
  if (g.poly) j["polynomial"] = *g.poly;
}

}  // namespace egorov
