#include <random>

#include <gtest/gtest.h>
#include <nlohmann/json.hpp>

#include "egorov/scalars.hpp"

using namespace egorov;

namespace {

using Term = AsymptoticScalar::Term;

AsymptoticScalar series(std::vector<Term> t, std::int64_t trunc = AsymptoticScalar::kDefaultTruncation) {
  return AsymptoticScalar(std::move(t), Rational(trunc));
}

AsymptoticScalar random_real(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> n(1, 4), step(1, 3), num(-8, 8);
  std::vector<Term> t;
  int e = std::uniform_int_distribution<int>(-6, 2)(rng);
  const int k = n(rng);
  for (int i = 0; i < k; ++i) {
    // A dyadic leading coefficient keeps the inverse series exact in binary.
    int c = num(rng);
    if (c == 0 || i == 0) c = (c < 0 ? -1 : 1) << std::uniform_int_distribution<int>(1, 4)(rng);
    t.push_back({Rational(e, 2), Complex(c / 4.0)});
    e += step(rng);
  }
  return series(std::move(t));
}

}  // namespace

TEST(Scalars, NormalizesTermsAndDropsZeros) {
  const auto a = series({{Rational(2), Complex(1.0)}, {Rational(-1), Complex(3.0)}, {Rational(2), Complex(-1.0)},
                         {Rational(9), Complex(5.0)}});
  ASSERT_EQ(a.terms().size(), 1u);
  EXPECT_EQ(a.leading_exponent(), Rational(-1));
  EXPECT_EQ(a.coefficient(Rational(-1)), Complex(3.0));
  EXPECT_EQ(a.coefficient(Rational(9)), Complex(0.0));
}

TEST(Scalars, ProductOfInfiniteLowersTruncation) {
  const auto inf = AsymptoticScalar::monomial(Complex(1.0), Rational(-3));
  const auto p = inf * AsymptoticScalar(2.0);
  EXPECT_EQ(p.truncation_order(), Rational(5));
  EXPECT_EQ(p.coefficient(Rational(-3)), Complex(2.0));
}

TEST(Scalars, InverseOfOnePlusRho) {
  const auto a = AsymptoticScalar(1.0) + AsymptoticScalar::rho();
  const auto inv = scalar_inv(a);
  for (int k = 0; k < 8; ++k) EXPECT_EQ(inv.coefficient(Rational(k)), Complex(k % 2 ? -1.0 : 1.0)) << k;
  EXPECT_TRUE(agrees_up_to_truncation(a * inv, AsymptoticScalar(1.0)));
}

TEST(Scalars, InverseOfZeroThrows) { EXPECT_THROW(scalar_inv(AsymptoticScalar()), DivisionByZero); }

TEST(Scalars, SquareRootSquares) {
  const auto a = series({{Rational(-2), Complex(4.0)}, {Rational(-1), Complex(1.0)}, {Rational(1), Complex(0.5)}});
  const auto r = scalar_root(a, 2);
  EXPECT_EQ(r.leading_exponent(), Rational(-1));
  EXPECT_NEAR(r.leading_coefficient().real(), 2.0, 1e-15);
  const auto sq = r * r;
  const Rational lim = std::min(sq.truncation_order(), a.truncation_order());
  for (const auto& t : a.terms())
    if (t.exponent < lim) EXPECT_NEAR(std::abs(sq.coefficient(t.exponent) - t.coefficient), 0.0, 1e-14);
  EXPECT_THROW(scalar_root(AsymptoticScalar(-1.0), 2), std::domain_error);
}

TEST(Scalars, OrderingByLeadingCoefficient) {
  const auto rho = AsymptoticScalar::rho();
  EXPECT_EQ(scalar_cmp(rho, AsymptoticScalar(0.0)), Ordering::greater);
  EXPECT_EQ(scalar_cmp(rho, AsymptoticScalar(1e-300)), Ordering::less);
  EXPECT_EQ(scalar_cmp(-rho, AsymptoticScalar(-1e-300)), Ordering::greater);
  EXPECT_EQ(scalar_cmp(scalar_inv(rho), AsymptoticScalar(1e300)), Ordering::greater);
  EXPECT_EQ(scalar_cmp(AsymptoticScalar(2.0), AsymptoticScalar(2.0)), Ordering::equal);
  EXPECT_THROW(scalar_cmp(AsymptoticScalar(Complex(0.0, 1.0)), rho), NotOrdered);
}

TEST(Scalars, StandardPartAndClassification) {
  const auto a = AsymptoticScalar(3.0) + AsymptoticScalar::rho();
  EXPECT_EQ(standard_part(a), Complex(3.0));
  EXPECT_EQ(classify(a), Magnitude::finite_noninfinitesimal);
  EXPECT_EQ(classify(AsymptoticScalar::rho()), Magnitude::infinitesimal);
  EXPECT_EQ(classify(AsymptoticScalar()), Magnitude::zero);
  const auto big = scalar_inv(AsymptoticScalar::rho());
  EXPECT_EQ(classify(big), Magnitude::infinite);
  EXPECT_THROW(standard_part(big), NotFinite);
}

TEST(Scalars, EvaluateMatchesSeries) {
  const auto a = series({{Rational(-1, 2), Complex(2.0)}, {Rational(1), Complex(-1.0)}});
  const double r = 0.01;
  EXPECT_NEAR(a.evaluate(r).real(), 2.0 / std::sqrt(r) - r, 1e-12);
}

TEST(Scalars, JsonRoundTrip) {
  const auto a = series({{Rational(-3, 2), Complex(1.5, -0.5)}, {Rational(2), Complex(0.25)}}, 6);
  nlohmann::json j = a;
  const auto b = j.get<AsymptoticScalar>();
  EXPECT_TRUE(agrees_up_to_truncation(a, b));
  EXPECT_EQ(a.terms(), b.terms());
}

TEST(ScalarsProperty, FieldAndOrderAxioms) {
  std::mt19937_64 rng(99);
  const AsymptoticScalar zero, one(1.0);
  for (int i = 0; i < 500; ++i) {
    const auto a = random_real(rng), b = random_real(rng), c = random_real(rng);
    ASSERT_TRUE(agrees_up_to_truncation(a + b, b + a));
    ASSERT_TRUE(agrees_up_to_truncation(a * (b * c), (a * b) * c));
    ASSERT_TRUE(agrees_up_to_truncation(a * (b + c), a * b + a * c));
    ASSERT_TRUE(agrees_up_to_truncation(a * scalar_inv(a), one));
    ASSERT_TRUE(agrees_up_to_truncation(a - a, zero));
    const auto ab = scalar_cmp(a, b);
    if (ab == Ordering::less) ASSERT_EQ(scalar_cmp(a + c, b + c), Ordering::less);
    if (ab == Ordering::less && scalar_cmp(c, zero) == Ordering::greater)
      ASSERT_EQ(scalar_cmp(a * c, b * c), Ordering::less);
  }
}

TEST(ScalarsProperty, EvaluationIsAHomomorphismAtSmallRho) {
  std::mt19937_64 rng(5);
  const double r = 1e-3;
  for (int i = 0; i < 200; ++i) {
    const auto a = random_real(rng), b = random_real(rng);
    const auto p = a * b;
    const double lhs = p.evaluate(r).real(), rhs = a.evaluate(r).real() * b.evaluate(r).real();
    const double tail = std::pow(r, boost::rational_cast<double>(p.truncation_order())) * 1e3;
    ASSERT_NEAR(lhs, rhs, 1e-12 * std::abs(rhs) + tail);
  }
}
