#include <random>

#include <gtest/gtest.h>

#include "egorov/regular.hpp"

using namespace egorov;

namespace {

const KernelPtr& kernel() {
  static const KernelPtr k = make_kernel(2);
  return k;
}

const std::vector<std::vector<double>> kPts{{-0.4}, {0.3}};

StandardFunction random_smooth(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-1.5, 1.5);
  switch (rng() % 4) {
    case 0: return StandardFunction::separable({Smooth1D::sin(u(rng), u(rng))});
    case 1: return StandardFunction::separable({Smooth1D::exp(0.5 * u(rng))});
    case 2: return StandardFunction::polynomial(Polynomial::univariate({u(rng), u(rng), u(rng)}));
    default: return StandardFunction::separable({Smooth1D::cos(u(rng))});
  }
}

// Random element of the algebra generated by standard functions and
// moderate scalars: sums and products of c rho^-n sigma(f).
GenFunc random_member(std::mt19937_64& rng, const Domain& d, unsigned max_n = 3) {
  auto term = [&] {
    const int n = static_cast<int>(rng() % (max_n + 1));
    return AsymptoticScalar::monomial(Complex(1.0 + (rng() % 3)), Rational(-n)) * sigma_embed(random_smooth(rng), d);
  };
  GenFunc f = term();
  const int ops = 1 + static_cast<int>(rng() % 3);
  for (int i = 0; i < ops; ++i) f = (rng() & 1) ? f + term() : f * term();
  return f;
}

}  // namespace

TEST(Regular, CertifiesGeneratedTree) {
  const Domain d = Domain::whole(1);
  const GenFunc f = AsymptoticScalar::monomial(Complex(1.0), Rational(-3)) *
                        sigma_embed(StandardFunction::separable({Smooth1D::sin()}), d) +
                    sigma_embed(StandardFunction::polynomial(Polynomial::univariate({0.0, 0.0, 1.0})), d);
  const auto r = certify_member(f);
  EXPECT_EQ(r.verdict, Regularity::certified_member);
  EXPECT_DOUBLE_EQ(r.bound_exponent, 3.0);
  EXPECT_FALSE(r.certificate.empty());
}

TEST(Regular, CertificationIsInconclusiveForKernels) {
  const GenFunc D = kernel_genfunc(kernel(), Domain::whole(1));
  EXPECT_EQ(certify_member(D).verdict, Regularity::inconclusive);
  EXPECT_EQ(certify_member(compose(UnaryFunction::exp(), D)).verdict, Regularity::inconclusive);
}

TEST(Regular, RefutesDeltaAndItsExponential) {
  const GenFunc D = kernel_genfunc(kernel(), Domain::whole(1));
  const auto g = regularity_rho_grid();
  const auto r = refute_member(D, 6, kPts, g);
  EXPECT_EQ(r.verdict, Regularity::refuted);
  EXPECT_FALSE(r.refutation_trace.empty());
  EXPECT_EQ(refute_member(compose(UnaryFunction::exp(), D), 6, kPts, g).verdict, Regularity::refuted);
  EXPECT_EQ(refute_member(derive(D, MultiIndex{1}), 6, kPts, g).verdict, Regularity::refuted);
}

TEST(Regular, GrowthExponentsOfDeltaDerivatives) {
  const GenFunc D = kernel_genfunc(kernel(), Domain::whole(1));
  const auto r = refute_member(D, 4, {{0.0}}, regularity_rho_grid());
  // At the center, d^k Delta grows like rho^-(k+1) for even k.
  for (const auto& s : r.growth)
    if (s.base == std::vector<double>{0.0} && s.offset_coeff == std::vector<double>{0.0} && s.alpha[0] % 2 == 0)
      EXPECT_NEAR(s.exponent, s.alpha[0] + 1.0, 0.05) << s.alpha[0];
}

TEST(Regular, RejectsShallowScans) {
  EXPECT_THROW(refute_member(zero_genfunc(Domain::whole(1)), 1, kPts, regularity_rho_grid()), std::invalid_argument);
}

TEST(RegularProperty, RandomMembersAreCertifiedAndNeverRefuted) {
  std::mt19937_64 rng(31);
  const Domain d = Domain::whole(1);
  for (int i = 0; i < 25; ++i) {
    const GenFunc f = random_member(rng, d);
    ASSERT_EQ(certify_member(f).verdict, Regularity::certified_member) << i;
    ASSERT_NE(refute_member(f, 6, kPts, regularity_rho_grid()).verdict, Regularity::refuted) << i;
  }
}

TEST(RegularProperty, KernelSummandsAreRefuted) {
  std::mt19937_64 rng(32);
  const Domain d = Domain::whole(1);
  std::uniform_real_distribution<double> c(-0.5, 0.5);
  for (int i = 0; i < 10; ++i) {
    // Standard-size members: a kernel summand then dominates every derivative.
    const GenFunc f = random_member(rng, d, 0) + kernel_genfunc(kernel(), d, {c(rng)});
    ASSERT_EQ(certify_member(f).verdict, Regularity::inconclusive) << i;
    ASSERT_EQ(refute_member(f, 6, kPts, regularity_rho_grid()).verdict, Regularity::refuted) << i;
  }
}

TEST(Regular, CatalogueMatchesExpectedPattern) {
  const auto rows = regular_catalogue(kernel());
  EXPECT_TRUE(catalogue_matches(rows, expected_catalogue()));
  ASSERT_EQ(rows.size(), 5u);
  EXPECT_EQ(rows[0].membership, Membership::not_member);
  EXPECT_EQ(rows[3].membership, Membership::undetermined);
  EXPECT_EQ(rows[4].membership, Membership::member);
  auto flipped = expected_catalogue();
  flipped[3].associated_certified = false;
  EXPECT_FALSE(catalogue_matches(rows, flipped));
}
