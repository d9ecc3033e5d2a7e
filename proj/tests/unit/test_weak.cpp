#include <cmath>

#include <boost/math/quadrature/tanh_sinh.hpp>
#include <gtest/gtest.h>

#include "egorov/dist.hpp"
#include "egorov/weak.hpp"

using namespace egorov;

namespace {

const KernelPtr& kernel() {
  static const KernelPtr k = make_kernel(2);
  return k;
}

std::vector<std::pair<double, Complex>> synth(const std::function<double(double)>& f, const std::vector<double>& g) {
  std::vector<std::pair<double, Complex>> s;
  for (double r : g) s.emplace_back(r, Complex(f(r)));
  return s;
}

StandardFunction sin_fn() { return StandardFunction::separable({Smooth1D::sin()}); }

}  // namespace

TEST(Weak, DyadicGrid) {
  const auto g = dyadic_rho_grid(3, 6);
  ASSERT_EQ(g.size(), 4u);
  EXPECT_EQ(g.front(), 0.125);
  EXPECT_EQ(g.back(), 1.0 / 64);
}

TEST(Weak, FitRecoversSyntheticExpansion) {
  const auto g = dyadic_rho_grid(4, 14);
  const auto fit = fit_asymptotics(synth([](double r) { return 3.0 / r + 2.0 - 0.5 * r * r; }, g),
                                   exponent_dictionary(-2, 4, g.size()));
  EXPECT_TRUE(fit.reliable);
  EXPECT_NEAR(fit.coefficient(Rational(-1)).real(), 3.0, 1e-9);
  EXPECT_NEAR(fit.coefficient(Rational(0)).real(), 2.0, 1e-9);
  EXPECT_NEAR(fit.coefficient(Rational(2)).real(), -0.5, 1e-6);
  EXPECT_NEAR(fit.coefficient(Rational(-2)).real(), 0.0, 1e-9);
  EXPECT_NEAR(fit.slope, -1.0, 0.01);
}

TEST(Weak, FitFlagsOffDictionaryBehaviour) {
  const auto g = dyadic_rho_grid(4, 14);
  const auto fit = fit_asymptotics(synth([](double r) { return std::log(r); }, g), exponent_dictionary(-2, 4, g.size()));
  EXPECT_FALSE(fit.reliable);
  EXPECT_THROW(fit_asymptotics(synth([](double r) { return r; }, {0.5, 0.25}), {Rational(0), Rational(1)}),
               std::invalid_argument);
}

TEST(Weak, DictionaryIsCutToSampleCount) {
  EXPECT_EQ(exponent_dictionary(-2, 7, 9).size(), 7u);
  EXPECT_EQ(exponent_dictionary(-2, 7, 100).size(), 10u);
}

TEST(Weak, BumpIsNormalized) {
  const TestFunction p = bump_test_function(0.3, 0.4);
  boost::math::quadrature::tanh_sinh<double> ts;
  const double mass = ts.integrate([&](double x) { return p.phi(std::vector<double>{x}); }, -0.1, 0.7);
  EXPECT_NEAR(mass, 1.0, 1e-13);
  EXPECT_EQ(default_test_suite(1).size(), 12u);
  EXPECT_EQ(default_test_suite(2).front().phi.dim, 2u);
}

TEST(Weak, TranslateShiftsValuesAndSupport) {
  const TestFunction p = bump_monomial_test_function(0.1, 0.8, 2);
  const TestFunction q = translate(p, {1.5});
  EXPECT_DOUBLE_EQ(q.support.axes[0].lo, p.support.axes[0].lo + 1.5);
  for (double x : {-0.5, 0.0, 0.33})
    EXPECT_NEAR(q.phi(std::vector<double>{x + 1.5}), p.phi(std::vector<double>{x}), 1e-15);
  EXPECT_NE(q.id, p.id);
  EXPECT_THROW(translate(p, {1.0, 2.0}), DimensionMismatch);
}

TEST(Weak, PairingOfDeltaKernelRecoversPhiAtZero) {
  const Domain d = Domain::interval(-2.0, 2.0);
  const GenFunc D = kernel_genfunc(kernel(), d);
  for (const auto& p : default_test_suite(1)) {
    const auto fit = pair(D, p, dyadic_rho_grid(8, 16));
    EXPECT_NEAR(std::abs(fit.coefficient(Rational(0)) - p.phi(std::vector<double>{0.0})), 0.0, 1e-8) << p.id;
  }
}

TEST(Weak, PairRequiresMarginInsideDomain) {
  const GenFunc f = sigma_embed(sin_fn(), Domain::interval(-1.0, 1.0));
  EXPECT_THROW(pair(f, bump_test_function(0.5, 0.6), dyadic_rho_grid()), std::invalid_argument);
}

TEST(Weak, SerialAndParallelPairingAgreeBitwise) {
  const Domain d = Domain::interval(-2.0, 2.0);
  const GenFunc f = iota_embed(schwartz_embed(Density::heaviside(), d), kernel()) * kernel_genfunc(kernel(), d, {0.1});
  PairOptions serial, parallel;
  serial.exec = Exec::serial;
  const auto g = dyadic_rho_grid(6, 10);
  const auto a = pair_grid(f, default_test_suite(1), g, serial);
  const auto b = pair_grid(f, default_test_suite(1), g, parallel);
  ASSERT_EQ(a.size(), b.size());
  for (std::size_t i = 0; i < a.size(); ++i) ASSERT_EQ(a[i], b[i]) << i;
}

TEST(Weak, AssociationVerdicts) {
  const Domain d = Domain::interval(-2.0, 2.0);
  const auto suite = default_test_suite(1);
  const auto g = dyadic_rho_grid();
  const GenFunc s = sigma_embed(sin_fn(), d);
  EXPECT_EQ(associated(iota_embed(schwartz_embed(Density::from_standard(sin_fn()), d), kernel()), s, suite, g, 1e-6)
                .verdict,
            Association::associated);
  EXPECT_EQ(associated(s, sigma_embed(StandardFunction::separable({Smooth1D::cos()}), d), suite, g, 1e-6).verdict,
            Association::not_associated);
  // Delta^2 pairs like rho^-1 int psi^2 phi(0): not associated with zero.
  const GenFunc D = kernel_genfunc(kernel(), d);
  EXPECT_EQ(associated(D * D, zero_genfunc(d), suite, g, 1e-6).verdict, Association::not_associated);
  // An infinitesimal scalar multiple is associated with zero.
  EXPECT_EQ(associated(AsymptoticScalar::rho() * s, zero_genfunc(d), suite, g, 1e-6).verdict,
            Association::associated);
}

TEST(Weak, RegionIntegralOfDeltaSquare) {
  const GenFunc D = kernel_genfunc(kernel(), Domain::whole(1));
  const auto fit = integrate_region(D * D, Region{1, {Box{{Interval{-1.0, 1.0}}}}}, dyadic_rho_grid());
  boost::math::quadrature::tanh_sinh<double> ts;
  const double psi2 = ts.integrate([](double t) { return kernel()->psi(t) * kernel()->psi(t); }, -1.0, 1.0);
  EXPECT_NEAR(fit.coefficient(Rational(-1)).real(), psi2, 1e-8);
  EXPECT_THROW(integrate_region(D, Region{1, {Box{{Interval{0.0, kInf}}}}}, dyadic_rho_grid()),
               std::invalid_argument);
}
