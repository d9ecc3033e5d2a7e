#include "egorov/scalars.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>

#include <nlohmann/json.hpp>

namespace egorov {

double to_double(const Rational& r) {
  return static_cast<double>(r.numerator()) / static_cast<double>(r.denominator());
}

std::string to_string(const Rational& r) {
  if (r.denominator() == 1) return std::to_string(r.numerator());
  return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

const char* to_string(Ordering o) {
  switch (o) {
    case Ordering::less: return "LT";
    case Ordering::equal: return "EQ";
    case Ordering::greater: return "GT";
  }
  return "?";
}

const char* to_string(Magnitude m) {
  switch (m) {
    case Magnitude::zero: return "zero";
    case Magnitude::infinitesimal: return "infinitesimal";
    case Magnitude::finite_noninfinitesimal: return "finite_noninfinitesimal";
    case Magnitude::infinite: return "infinite";
  }
  return "?";
}

namespace {

using Term = AsymptoticScalar::Term;

const Rational kNoLead(std::numeric_limits<std::int64_t>::max());

// Leading exponent, or a huge sentinel for zero so that min() ignores it.
Rational valuation(const AsymptoticScalar& a) {
  return a.is_zero() ? kNoLead : a.leading_exponent();
}

std::vector<Term> merge(const std::vector<Term>& x, const std::vector<Term>& y) {
  std::map<Rational, Complex> acc;
  for (const auto& t : x) acc[t.exponent] += t.coefficient;
  for (const auto& t : y) acc[t.exponent] += t.coefficient;
  std::vector<Term> out;
  out.reserve(acc.size());
  for (const auto& [e, c] : acc) out.push_back({e, c});
  return out;
}

std::vector<Term> cauchy(const std::vector<Term>& x, const std::vector<Term>& y,
                         const Rational& cutoff, bool& dropped) {
  std::map<Rational, Complex> acc;
  for (const auto& s : x) {
    for (const auto& t : y) {
      Rational e = s.exponent + t.exponent;
      if (e >= cutoff) {
        dropped = true;
        continue;
      }
      acc[e] += s.coefficient * t.coefficient;
    }
  }
  std::vector<Term> out;
  out.reserve(acc.size());
  for (const auto& [e, c] : acc) out.push_back({e, c});
  return out;
}

// Sum_{n>=0} coeff_n * u^n where u has strictly positive exponents; all
// exponents >= cutoff are discarded. coeff(n) supplies the series weights.
template <class CoeffFn>
std::vector<Term> power_series(const std::vector<Term>& u, const Rational& cutoff,
                               CoeffFn coeff, bool& dropped) {
  std::vector<Term> sum{{Rational(0), coeff(0)}};
  if (cutoff <= Rational(0)) {
    dropped = true;
    return {};
  }
  std::vector<Term> power{{Rational(0), Complex(1.0, 0.0)}};
  for (unsigned n = 1;; ++n) {
    power = cauchy(power, u, cutoff, dropped);
    if (power.empty()) break;
    std::vector<Term> scaled = power;
    const Complex w = coeff(n);
    for (auto& t : scaled) t.coefficient *= w;
    sum = merge(sum, scaled);
  }
  return sum;
}

}  // namespace

AsymptoticScalar::AsymptoticScalar(Rational truncation_order) : truncation_(truncation_order) {}

AsymptoticScalar::AsymptoticScalar(Complex standard, Rational truncation_order)
    : truncation_(truncation_order) {
  if (standard != Complex(0.0, 0.0)) terms_.push_back({Rational(0), standard});
  normalize();
}

AsymptoticScalar::AsymptoticScalar(std::vector<Term> terms, Rational truncation_order)
    : terms_(std::move(terms)), truncation_(truncation_order) {
  normalize();
}

AsymptoticScalar AsymptoticScalar::monomial(Complex c, Rational e, Rational truncation_order) {
  return AsymptoticScalar({{e, c}}, truncation_order);
}

AsymptoticScalar AsymptoticScalar::rho(Rational truncation_order) {
  return monomial(Complex(1.0, 0.0), Rational(1), truncation_order);
}

void AsymptoticScalar::normalize() {
  std::map<Rational, Complex> acc;
  for (const auto& t : terms_) acc[t.exponent] += t.coefficient;
  terms_.clear();
  for (const auto& [e, c] : acc) {
    if (e >= truncation_) {
      if (c != Complex(0.0, 0.0)) truncated_ = true;
      continue;
    }
    if (c != Complex(0.0, 0.0)) terms_.push_back({e, c});
  }
}

bool AsymptoticScalar::is_real() const noexcept {
  return std::all_of(terms_.begin(), terms_.end(),
                     [](const Term& t) { return t.coefficient.imag() == 0.0; });
}

const Rational& AsymptoticScalar::leading_exponent() const {
  if (terms_.empty()) throw std::domain_error("leading exponent of the zero scalar");
  return terms_.front().exponent;
}

const Complex& AsymptoticScalar::leading_coefficient() const {
  if (terms_.empty()) throw std::domain_error("leading coefficient of the zero scalar");
  return terms_.front().coefficient;
}

Complex AsymptoticScalar::coefficient(const Rational& e) const {
  auto it = std::lower_bound(terms_.begin(), terms_.end(), e,
                             [](const Term& t, const Rational& x) { return t.exponent < x; });
  return (it != terms_.end() && it->exponent == e) ? it->coefficient : Complex(0.0, 0.0);
}

Complex AsymptoticScalar::evaluate(double rho) const {
  Complex v(0.0, 0.0);
  for (const auto& t : terms_) {
    const double p = t.exponent.denominator() == 1
                         ? std::pow(rho, static_cast<double>(t.exponent.numerator()))
                         : std::pow(rho, to_double(t.exponent));
    v += t.coefficient * p;
  }
  return v;
}

AsymptoticScalar AsymptoticScalar::with_truncation(const Rational& order) const {
  AsymptoticScalar out(terms_, std::min(order, truncation_));
  out.truncated_ = out.truncated_ || truncated_;
  return out;
}

AsymptoticScalar AsymptoticScalar::operator-() const {
  AsymptoticScalar out = *this;
  for (auto& t : out.terms_) t.coefficient = -t.coefficient;
  return out;
}

AsymptoticScalar operator+(const AsymptoticScalar& a, const AsymptoticScalar& b) {
  AsymptoticScalar out(merge(a.terms_, b.terms_), std::min(a.truncation_, b.truncation_));
  out.truncated_ = out.truncated_ || a.truncated_ || b.truncated_;
  return out;
}

AsymptoticScalar operator-(const AsymptoticScalar& a, const AsymptoticScalar& b) { return a + (-b); }

AsymptoticScalar operator*(const AsymptoticScalar& a, const AsymptoticScalar& b) {
  Rational order = std::min(a.truncation_, b.truncation_);
  if (!b.is_zero()) order = std::min(order, a.truncation_ + valuation(b));
  if (!a.is_zero()) order = std::min(order, b.truncation_ + valuation(a));
  bool dropped = false;
  AsymptoticScalar out(cauchy(a.terms_, b.terms_, order, dropped), order);
  out.truncated_ = out.truncated_ || dropped || a.truncated_ || b.truncated_;
  return out;
}

AsymptoticScalar operator/(const AsymptoticScalar& a, const AsymptoticScalar& b) {
  return a * scalar_inv(b);
}

bool operator==(const AsymptoticScalar& a, const AsymptoticScalar& b) {
  return a.truncation_ == b.truncation_ && a.terms_ == b.terms_;
}

AsymptoticScalar scalar_add(const AsymptoticScalar& a, const AsymptoticScalar& b) { return a + b; }
AsymptoticScalar scalar_mul(const AsymptoticScalar& a, const AsymptoticScalar& b) { return a * b; }

AsymptoticScalar scalar_inv(const AsymptoticScalar& a) {
  if (a.is_zero()) throw DivisionByZero("inverse of the zero scalar");
  const Rational lead = a.leading_exponent();
  const Complex c = a.leading_coefficient();
  const Rational order = std::min(a.truncation_order(), a.truncation_order() - 2 * lead);
  // a = c rho^lead (1 + u); relative precision of (1 + u) is T - lead.
  std::vector<Term> u;
  for (std::size_t k = 1; k < a.terms().size(); ++k)
    u.push_back({a.terms()[k].exponent - lead, a.terms()[k].coefficient / c});
  bool dropped = false;
  const Rational rel = order + lead;
  auto series = power_series(u, rel, [](unsigned n) { return Complex(n % 2 == 0 ? 1.0 : -1.0, 0.0); },
                             dropped);
  for (auto& t : series) {
    t.exponent -= lead;
    t.coefficient /= c;
  }
  AsymptoticScalar out(std::move(series), order);
  (void)dropped;
  return out;
}

AsymptoticScalar scalar_root(const AsymptoticScalar& a, unsigned n) {
  if (n == 0) throw std::domain_error("zeroth root");
  if (a.is_zero()) return a;
  const Complex c = a.leading_coefficient();
  if (c.imag() != 0.0 || c.real() <= 0.0)
    throw std::domain_error("root requires a positive real leading coefficient");
  const Rational lead = a.leading_exponent();
  const Rational root_lead = lead / static_cast<std::int64_t>(n);
  const Rational order = std::min(a.truncation_order(), a.truncation_order() - lead + root_lead);
  std::vector<Term> u;
  for (std::size_t k = 1; k < a.terms().size(); ++k)
    u.push_back({a.terms()[k].exponent - lead, a.terms()[k].coefficient / c});
  // binomial(1/n, k)
  const double p = 1.0 / static_cast<double>(n);
  bool dropped = false;
  auto series = power_series(
      u, order - root_lead,
      [p](unsigned k) {
        double b = 1.0;
        for (unsigned j = 0; j < k; ++j) b *= (p - j) / static_cast<double>(j + 1);
        return Complex(b, 0.0);
      },
      dropped);
  const double scale = std::pow(c.real(), p);
  for (auto& t : series) {
    t.exponent += root_lead;
    t.coefficient *= scale;
  }
  return AsymptoticScalar(std::move(series), order);
}

Ordering scalar_cmp(const AsymptoticScalar& a, const AsymptoticScalar& b) {
  if (!a.is_real() || !b.is_real()) throw NotOrdered("comparison of non-real scalars");
  const AsymptoticScalar diff = a - b;
  if (diff.is_zero()) return Ordering::equal;
  return diff.leading_coefficient().real() > 0.0 ? Ordering::greater : Ordering::less;
}

Complex standard_part(const AsymptoticScalar& a) {
  if (!a.is_zero() && a.leading_exponent() < Rational(0))
    throw NotFinite("standard part of an infinite scalar " + to_string(a));
  return a.coefficient(Rational(0));
}

Magnitude classify(const AsymptoticScalar& a) {
  if (a.is_zero()) return Magnitude::zero;
  const Rational& e = a.leading_exponent();
  if (e > Rational(0)) return Magnitude::infinitesimal;
  if (e == Rational(0)) return Magnitude::finite_noninfinitesimal;
  return Magnitude::infinite;
}

bool agrees_up_to_truncation(const AsymptoticScalar& a, const AsymptoticScalar& b) {
  const Rational order = std::min(a.truncation_order(), b.truncation_order());
  return a.with_truncation(order).terms() == b.with_truncation(order).terms();
}

std::string to_string(const AsymptoticScalar& a) {
  if (a.is_zero()) return "0";
  std::ostringstream os;
  os.precision(17);
  bool first = true;
  for (const auto& t : a.terms()) {
    if (!first) os << " + ";
    first = false;
    os << "(" << t.coefficient.real();
    if (t.coefficient.imag() != 0.0) os << (t.coefficient.imag() < 0 ? "-" : "+") << std::abs(t.coefficient.imag()) << "i";
    os << ")";
    if (t.exponent != Rational(0)) os << "*rho^" << to_string(t.exponent);
  }
  return os.str();
}

void to_json(nlohmann::json& j, const AsymptoticScalar& a) {
  j = nlohmann::json::array();
  for (const auto& t : a.terms())
    j.push_back({t.exponent.numerator(), t.exponent.denominator(), t.coefficient.real(),
                 t.coefficient.imag()});
}

void from_json(const nlohmann::json& j, AsymptoticScalar& a) {
  if (!j.is_array()) throw std::invalid_argument("scalar JSON must be an array");
  std::vector<AsymptoticScalar::Term> terms;
  for (const auto& q : j) {
    if (!q.is_array() || q.size() != 4)
      throw std::invalid_argument("scalar term must be [num, den, re, im]");
    const auto den = q[1].get<std::int64_t>();
    if (den == 0) throw std::invalid_argument("zero exponent denominator");
    terms.push_back({Rational(q[0].get<std::int64_t>(), den),
                     Complex(q[2].get<double>(), q[3].get<double>())});
  }
  a = AsymptoticScalar(std::move(terms), Rational(AsymptoticScalar::kDefaultTruncation));
}

}  // namespace egorov
