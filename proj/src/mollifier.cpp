#include "egorov/mollifier.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include <Eigen/Dense>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <nlohmann/json.hpp>

#include "egorov/quadrature.hpp"

namespace egorov {

namespace {

constexpr double kEdge = 1.0 - 1e-12;

using Poly = std::vector<double>;  // ascending coefficients

double horner(const Poly& p, double t) {
  double v = 0.0;
  for (auto it = p.rbegin(); it != p.rend(); ++it) v = v * t + *it;
  return v;
}

Poly poly_derivative(const Poly& p) {
  if (p.size() <= 1) return {0.0};
  Poly d(p.size() - 1);
  for (std::size_t i = 1; i < p.size(); ++i) d[i - 1] = static_cast<double>(i) * p[i];
  return d;
}

Poly poly_mul(const Poly& a, const Poly& b) {
  Poly c(a.size() + b.size() - 1, 0.0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) c[i + j] += a[i] * b[j];
  return c;
}

void poly_add_to(Poly& acc, const Poly& p) {
  if (acc.size() < p.size()) acc.resize(p.size(), 0.0);
  for (std::size_t i = 0; i < p.size(); ++i) acc[i] += p[i];
}

// R_0 = 1, R_{k+1} = (1-t^2)^2 R_k' + 4 k t (1-t^2) R_k - 2 t R_k.
const std::vector<Poly>& window_numerators() {
  static const std::vector<Poly> table = [] {
    std::vector<Poly> r{{1.0}};
    const Poly s{1.0, 0.0, -1.0};
    const Poly s2 = poly_mul(s, s);
    for (unsigned k = 0; k < kMaxDerivativeOrder; ++k) {
      Poly next = poly_mul(s2, poly_derivative(r[k]));
      poly_add_to(next, poly_mul(Poly{0.0, 4.0 * k}, poly_mul(s, r[k])));
      poly_add_to(next, poly_mul(Poly{0.0, -2.0}, r[k]));
      r.push_back(std::move(next));
    }
    return r;
  }();
  return table;
}

// Even polynomial P(t) = sum_k c_k t^{2k} as an ascending dense polynomial.
Poly expand_even(const std::vector<double>& c) {
  Poly p(2 * c.size() - 1, 0.0);
  for (std::size_t k = 0; k < c.size(); ++k) p[2 * k] = c[k];
  return p;
}

// M_{jk} = int w t^{2(j+k)} by Gauss-Legendre.
Eigen::MatrixXd moment_matrix(unsigned m, unsigned n) {
  const auto& rule = quad::gauss_legendre(n);
  Eigen::MatrixXd M = Eigen::MatrixXd::Zero(m + 1, m + 1);
  for (std::size_t q = 0; q < rule.nodes.size(); ++q) {
    const double t = rule.nodes[q];
    const double wt = rule.weights[q] * bump_window(t);
    const double t2 = t * t;
    double p = 1.0;
    std::vector<double> pw(2 * m + 1);
    for (auto& v : pw) {
      v = p;
      p *= t2;
    }
    for (unsigned j = 0; j <= m; ++j)
      for (unsigned k = 0; k <= m; ++k) M(j, k) += wt * pw[j + k];
  }
  return M;
}

std::vector<double> residuals_of(const Eigen::MatrixXd& M, const std::vector<double>& c) {
  std::vector<double> r(c.size());
  for (Eigen::Index j = 0; j < M.rows(); ++j) {
    long double s = (j == 0) ? -1.0L : 0.0L;
    for (Eigen::Index k = 0; k < M.cols(); ++k)
      s += static_cast<long double>(M(j, k)) * static_cast<long double>(c[static_cast<std::size_t>(k)]);
    r[static_cast<std::size_t>(j)] = static_cast<double>(std::abs(s));
  }
  return r;
}

}  // namespace

double bump_window(double t) {
  if (std::abs(t) >= kEdge) return 0.0;
  return std::exp(-1.0 / (1.0 - t * t));
}

double bump_window_derivative(unsigned n, double t) {
  if (n > kMaxDerivativeOrder) throw std::invalid_argument("derivative order above supported maximum");
  if (std::abs(t) >= kEdge) return 0.0;
  const double s = 1.0 - t * t;
  const double r = horner(window_numerators()[n], t);
  if (r == 0.0) return 0.0;
  return std::exp(-1.0 / s - 2.0 * n * std::log(s)) * r;
}

Kernel Kernel::build(unsigned m, unsigned quad_resolution) {
  if (m > kMaxEvenMoments) {
    std::ostringstream os;
    os << "moment system for m = " << m << " is too ill-conditioned; use m <= " << kMaxEvenMoments;
    throw ConditioningError(os.str());
  }
  if (quad_resolution < 8) throw std::invalid_argument("quad_resolution must be at least 8");
  const Eigen::MatrixXd M = moment_matrix(m, quad_resolution);
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(M);
  const auto& sv = svd.singularValues();
  const double cond = sv(0) / sv(sv.size() - 1);
  if (!(cond < 1e13)) {
    std::ostringstream os;
    os << "moment system condition number " << cond << " for m = " << m << "; lower m";
    throw ConditioningError(os.str());
  }

  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(m + 1);
  rhs(0) = 1.0;
  const auto lu = M.fullPivLu();
  Eigen::VectorXd c = lu.solve(rhs);
  for (int it = 0; it < 4; ++it) {
    Eigen::VectorXd r(m + 1);
    for (Eigen::Index j = 0; j <= static_cast<Eigen::Index>(m); ++j) {
      long double s = rhs(j);
      for (Eigen::Index k = 0; k <= static_cast<Eigen::Index>(m); ++k)
        s -= static_cast<long double>(M(j, k)) * static_cast<long double>(c(k));
      r(j) = static_cast<double>(s);
    }
    c += lu.solve(r);
  }

  Kernel k;
  k.coeffs_.assign(c.data(), c.data() + c.size());
  k.quad_resolution_ = quad_resolution;
  k.residuals_ = residuals_of(M, k.coeffs_);
  const double worst = *std::max_element(k.residuals_.begin(), k.residuals_.end());
  if (!(worst <= 1e-12)) {
    std::ostringstream os;
    os << "moment residual " << worst << " above 1e-12 for m = " << m << "; lower m";
    throw ConditioningError(os.str());
  }
  k.finish();
  return k;
}

Kernel Kernel::from_coefficients(std::vector<double> poly_coeffs, unsigned quad_resolution) {
  if (poly_coeffs.empty()) throw std::invalid_argument("kernel needs at least one coefficient");
  Kernel k;
  k.coeffs_ = std::move(poly_coeffs);
  k.quad_resolution_ = quad_resolution;
  k.residuals_ = residuals_of(moment_matrix(k.m(), quad_resolution), k.coeffs_);
  k.finish();
  return k;
}

void Kernel::finish() {
  p_derivs_.assign(1, expand_even(coeffs_));
  while (p_derivs_.back().size() > 1) p_derivs_.push_back(poly_derivative(p_derivs_.back()));
  const std::size_t n = kTableIntervals;
  const double h = 2.0 / static_cast<double>(n);
  psi_table_.resize(n + 1);
  Psi_table_.resize(n + 1);
  for (std::size_t i = 0; i <= n; ++i) psi_table_[i] = psi(-1.0 + h * static_cast<double>(i));
  const auto& rule = quad::gauss_legendre(8);
  Psi_table_[0] = 0.0;
  long double acc = 0.0L;
  for (std::size_t i = 0; i < n; ++i) {
    const double a = -1.0 + h * static_cast<double>(i);
    long double s = 0.0L;
    for (std::size_t q = 0; q < rule.nodes.size(); ++q)
      s += rule.weights[q] * psi(a + 0.5 * h * (1.0 + rule.nodes[q]));
    acc += 0.5L * h * s;
    Psi_table_[i + 1] = static_cast<double>(acc);
  }
  // Normalize so Psi(1) = 1 holds exactly; the correction is at roundoff level.
  const double total = Psi_table_[n];
  for (auto& v : Psi_table_) v /= total;
  Psi_table_[n] = 1.0;
}

double Kernel::psi_derivative(unsigned n, double t) const {
  if (std::abs(t) >= kEdge) return 0.0;
  // Leibniz: sum_k binom(n,k) w^(k) P^(n-k).
  double sum = 0.0;
  const std::size_t np = p_derivs_.size();
  for (unsigned k = 0; k <= n; ++k) {
    if (n - k >= np) continue;
    const double pv = horner(p_derivs_[n - k], t);
    if (pv == 0.0) continue;
    sum += binomial(n, k) * bump_window_derivative(k, t) * pv;
  }
  return sum;
}

double Kernel::Psi(double t) const {
  if (t <= -1.0) return 0.0;
  if (t >= 1.0) return 1.0;
  const double h = 2.0 / static_cast<double>(kTableIntervals);
  const double u = (t + 1.0) / h;
  auto i = static_cast<std::size_t>(u);
  if (i >= kTableIntervals) i = kTableIntervals - 1;
  const double s = u - static_cast<double>(i);
  const double y0 = Psi_table_[i], y1 = Psi_table_[i + 1];
  const double d0 = psi_table_[i] * h, d1 = psi_table_[i + 1] * h;
  const double s2 = s * s, s3 = s2 * s;
  return (2 * s3 - 3 * s2 + 1) * y0 + (s3 - 2 * s2 + s) * d0 + (-2 * s3 + 3 * s2) * y1 + (s3 - s2) * d1;
}

double Kernel::eval(const MultiIndex& alpha, std::span<const double> xi, double rho) const {
  if (alpha.dim() != xi.size()) throw DimensionMismatch("multi-index and point dimensions differ");
  if (!(rho > 0.0)) throw std::invalid_argument("rho must be positive");
  double v = 1.0;
  for (std::size_t i = 0; i < xi.size(); ++i) {
    const double t = xi[i] / rho;
    if (std::abs(t) >= 1.0) return 0.0;
    v *= psi_derivative(alpha[i], t);
  }
  return v * std::pow(rho, -static_cast<double>(xi.size() + alpha.order()));
}

double Kernel::cutoff(const Domain& dom, std::span<const double> xi, double rho, const MultiIndex& alpha) const {
  if (xi.size() != dom.dim() || alpha.dim() != dom.dim()) throw DimensionMismatch("cutoff dimension mismatch");
  if (!(rho > 0.0)) throw std::invalid_argument("rho must be positive");
  const Region reg = shrink_clip(dom, 3.0 * rho);
  double total = 0.0;
  for (const auto& box : reg.boxes) {
    double v = 1.0;
    for (std::size_t i = 0; i < xi.size() && v != 0.0; ++i) {
      const double ta = (xi[i] - box.axes[i].lo) / rho;
      const double tb = (xi[i] - box.axes[i].hi) / rho;
      if (alpha[i] == 0) {
        v *= Psi(ta) - Psi(tb);
      } else {
        const unsigned k = alpha[i] - 1;
        v *= std::pow(rho, -static_cast<double>(alpha[i])) * (psi_derivative(k, ta) - psi_derivative(k, tb));
      }
    }
    total += v;
  }
  return total;
}

double Kernel::moment(unsigned order, unsigned quad_resolution) const {
  if (quad_resolution == 0) throw std::invalid_argument("quad_resolution must be positive");
  using GK = boost::math::quadrature::gauss_kronrod<double, 31>;
  auto f = [&](double t) { return std::pow(t, static_cast<double>(order)) * psi(t); };
  const double h = 2.0 / quad_resolution;
  double s = 0.0;
  for (unsigned p = 0; p < quad_resolution; ++p) s += GK::integrate(f, -1.0 + h * p, -1.0 + h * (p + 1), 0, 0);
  return s;
}

KernelPtr make_kernel(unsigned m, unsigned quad_resolution) {
  return std::make_shared<const Kernel>(Kernel::build(m, quad_resolution));
}

void to_json(nlohmann::json& j, const Kernel& k) {
  j = {{"m", k.m()},
       {"quad_resolution", k.quad_resolution()},
       {"poly_coeffs", k.poly_coeffs()},
       {"moment_residuals", k.moment_residuals()},
       {"psi_table", k.psi_table()},
       {"Psi_table", k.Psi_table()}};
}

Kernel kernel_from_json(const nlohmann::json& j) {
  auto coeffs = j.at("poly_coeffs").get<std::vector<double>>();
  const unsigned qr = j.value("quad_resolution", 256u);
  if (j.contains("m") && j.at("m").get<unsigned>() + 1 != coeffs.size())
    throw std::invalid_argument("kernel json: m does not match poly_coeffs");
  return Kernel::from_coefficients(std::move(coeffs), qr);
}

}  // namespace egorov
