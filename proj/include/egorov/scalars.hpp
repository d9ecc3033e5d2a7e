#pragma once

#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <boost/rational.hpp>
#include <nlohmann/json_fwd.hpp>

namespace egorov {

using Rational = boost::rational<std::int64_t>;
using Complex = std::complex<double>;

double to_double(const Rational& r);
std::string to_string(const Rational& r);

struct DivisionByZero : std::domain_error {
  using std::domain_error::domain_error;
};
struct NotOrdered : std::domain_error {
  using std::domain_error::domain_error;
};
struct NotFinite : std::domain_error {
  using std::domain_error::domain_error;
};

enum class Ordering { less, equal, greater };
enum class Magnitude { zero, infinitesimal, finite_noninfinitesimal, infinite };

const char* to_string(Ordering o);
const char* to_string(Magnitude m);

/// Truncated generalized power series sum_k c_k rho^{e_k} in the positive
/// infinitesimal rho, with rational exponents and complex coefficients.
///
/// Terms are kept sorted by strictly increasing exponent with no zero
/// coefficients. Every term at or above the truncation order is dropped;
/// `truncated()` reports whether an operation discarded anything.
///
/// Products and inverses track how much of the result is actually known:
/// multiplying by an infinite element (negative leading exponent) lowers
/// the truncation order so that retained terms are always exact.
class AsymptoticScalar {
 public:
  struct Term {
    Rational exponent;
    Complex coefficient;
    friend bool operator==(const Term&, const Term&) = default;
  };

  static constexpr std::int64_t kDefaultTruncation = 8;

  AsymptoticScalar() = default;
  explicit AsymptoticScalar(Rational truncation_order);
  // NOLINTNEXTLINE(google-explicit-constructor)
  AsymptoticScalar(Complex standard, Rational truncation_order = Rational(kDefaultTruncation));
  // NOLINTNEXTLINE(google-explicit-constructor)
  AsymptoticScalar(double standard, Rational truncation_order = Rational(kDefaultTruncation))
      : AsymptoticScalar(Complex(standard, 0.0), truncation_order) {}
  AsymptoticScalar(std::vector<Term> terms, Rational truncation_order);

  /// c * rho^e.
  static AsymptoticScalar monomial(Complex c, Rational e,
                                   Rational truncation_order = Rational(kDefaultTruncation));
  /// The infinitesimal rho itself.
  static AsymptoticScalar rho(Rational truncation_order = Rational(kDefaultTruncation));

  [[nodiscard]] const std::vector<Term>& terms() const noexcept { return terms_; }
  [[nodiscard]] const Rational& truncation_order() const noexcept { return truncation_; }
  [[nodiscard]] bool truncated() const noexcept { return truncated_; }
  [[nodiscard]] bool is_zero() const noexcept { return terms_.empty(); }
  [[nodiscard]] bool is_real() const noexcept;

  /// Exponent of the leading (smallest-exponent) term. Requires nonzero.
  [[nodiscard]] const Rational& leading_exponent() const;
  [[nodiscard]] const Complex& leading_coefficient() const;
  /// Coefficient at exponent e (0 if absent).
  [[nodiscard]] Complex coefficient(const Rational& e) const;

  /// Numeric value of the series at a concrete rho.
  [[nodiscard]] Complex evaluate(double rho) const;

  /// Same terms, truncated to a (lower) order.
  [[nodiscard]] AsymptoticScalar with_truncation(const Rational& order) const;

  AsymptoticScalar operator-() const;
  friend AsymptoticScalar operator+(const AsymptoticScalar& a, const AsymptoticScalar& b);
  friend AsymptoticScalar operator-(const AsymptoticScalar& a, const AsymptoticScalar& b);
  friend AsymptoticScalar operator*(const AsymptoticScalar& a, const AsymptoticScalar& b);
  friend AsymptoticScalar operator/(const AsymptoticScalar& a, const AsymptoticScalar& b);

  /// Identical term lists and truncation orders.
  friend bool operator==(const AsymptoticScalar& a, const AsymptoticScalar& b);

 private:
  void normalize();

  std::vector<Term> terms_;
  Rational truncation_{kDefaultTruncation};
  bool truncated_ = false;
};

AsymptoticScalar scalar_add(const AsymptoticScalar& a, const AsymptoticScalar& b);
AsymptoticScalar scalar_mul(const AsymptoticScalar& a, const AsymptoticScalar& b);
/// Leading-term inversion followed by the geometric series of the remainder.
/// Throws DivisionByZero for the zero scalar.
AsymptoticScalar scalar_inv(const AsymptoticScalar& a);
/// Principal n-th root of a scalar whose leading coefficient is real and
/// positive (binomial series of the remainder). Throws std::domain_error
/// otherwise.
AsymptoticScalar scalar_root(const AsymptoticScalar& a, unsigned n);
/// Order on real scalars by the sign of the leading coefficient of a - b.
/// Throws NotOrdered when either argument has a nonzero imaginary part.
Ordering scalar_cmp(const AsymptoticScalar& a, const AsymptoticScalar& b);
/// Coefficient at exponent 0 of a finite scalar; throws NotFinite if any
/// negative exponent is present.
Complex standard_part(const AsymptoticScalar& a);
Magnitude classify(const AsymptoticScalar& a);

/// True when a and b carry identical coefficients at every exponent below
/// the smaller of their truncation orders.
bool agrees_up_to_truncation(const AsymptoticScalar& a, const AsymptoticScalar& b);

std::string to_string(const AsymptoticScalar& a);

/// JSON array of [exponent_num, exponent_den, re, im] quadruples.
void to_json(nlohmann::json& j, const AsymptoticScalar& a);
void from_json(const nlohmann::json& j, AsymptoticScalar& a);

}  // namespace egorov
