#include "egorov/polynomial.hpp"

#include <cmath>
#include <sstream>

#include <nlohmann/json.hpp>

namespace egorov {

Polynomial::Polynomial(std::size_t dim, std::map<MultiIndex, double> terms) : dim_(dim), terms_(std::move(terms)) {
  for (const auto& [a, c] : terms_)
    if (a.dim() != dim_) throw std::invalid_argument("polynomial exponent dimension mismatch");
  prune();
}

Polynomial Polynomial::univariate(const std::vector<double>& coeffs) {
  std::map<MultiIndex, double> t;
  for (unsigned k = 0; k < coeffs.size(); ++k) t[MultiIndex({k})] = coeffs[k];
  return Polynomial(1, std::move(t));
}

Polynomial Polynomial::constant(std::size_t dim, double c) { return Polynomial(dim, {{MultiIndex(dim), c}}); }

Polynomial Polynomial::coordinate(std::size_t dim, std::size_t axis) {
  return Polynomial(dim, {{MultiIndex::unit(dim, axis), 1.0}});
}

void Polynomial::prune() {
  for (auto it = terms_.begin(); it != terms_.end();) it = (it->second == 0.0) ? terms_.erase(it) : std::next(it);
}

int Polynomial::degree() const {
  int d = -1;
  for (const auto& [a, c] : terms_) d = std::max(d, static_cast<int>(a.order()));
  return d;
}

double Polynomial::operator()(std::span<const double> x) const {
  if (x.size() != dim_) throw std::invalid_argument("polynomial evaluated at point of wrong dimension");
  double s = 0.0;
  for (const auto& [a, c] : terms_) {
    double v = c;
    for (std::size_t i = 0; i < dim_; ++i)
      for (unsigned k = 0; k < a[i]; ++k) v *= x[i];
    s += v;
  }
  return s;
}

Polynomial Polynomial::derive(const MultiIndex& alpha) const {
  if (alpha.dim() != dim_) throw std::invalid_argument("derivative multi-index dimension mismatch");
  std::map<MultiIndex, double> out;
  for (const auto& [a, c] : terms_) {
    if (!a.dominates(alpha)) continue;
    double f = c;
    for (std::size_t i = 0; i < dim_; ++i)
      for (unsigned k = 0; k < alpha[i]; ++k) f *= static_cast<double>(a[i] - k);
    out[a - alpha] += f;
  }
  return Polynomial(dim_, std::move(out));
}

Polynomial operator+(const Polynomial& a, const Polynomial& b) {
  if (a.dim_ != b.dim_) throw std::invalid_argument("polynomial dimension mismatch");
  auto t = a.terms_;
  for (const auto& [e, c] : b.terms_) t[e] += c;
  return Polynomial(a.dim_, std::move(t));
}

Polynomial operator-(const Polynomial& a, const Polynomial& b) { return a + (-1.0) * b; }

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  if (a.dim_ != b.dim_) throw std::invalid_argument("polynomial dimension mismatch");
  std::map<MultiIndex, double> t;
  for (const auto& [ea, ca] : a.terms_)
    for (const auto& [eb, cb] : b.terms_) t[ea + eb] += ca * cb;
  return Polynomial(a.dim_, std::move(t));
}

Polynomial operator*(double c, const Polynomial& a) {
  auto t = a.terms_;
  for (auto& [e, v] : t) v *= c;
  return Polynomial(a.dim_, std::move(t));
}

std::string to_string(const Polynomial& p) {
  if (p.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [a, c] : p.terms()) {
    os << (first ? "" : " + ") << c;
    for (std::size_t i = 0; i < a.dim(); ++i) {
      if (a[i] == 0) continue;
      os << "*x" << i;
      if (a[i] > 1) os << "^" << a[i];
    }
    first = false;
  }
  return os.str();
}

void to_json(nlohmann::json& j, const Polynomial& p) {
  nlohmann::json terms = nlohmann::json::array();
  for (const auto& [a, c] : p.terms()) terms.push_back({a.values(), c});
  j = {{"dim", p.dim()}, {"terms", terms}};
}

Polynomial polynomial_from_json(const nlohmann::json& j) {
  const auto dim = j.at("dim").get<std::size_t>();
  std::map<MultiIndex, double> t;
  for (const auto& term : j.at("terms")) t[MultiIndex(term.at(0).get<std::vector<unsigned>>())] += term.at(1).get<double>();
  return Polynomial(dim, std::move(t));
}

}  // namespace egorov
