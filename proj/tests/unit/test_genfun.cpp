#include <cmath>

#include <gtest/gtest.h>

#include "egorov/dist.hpp"

using namespace egorov;

namespace {

const KernelPtr& kernel() {
  static const KernelPtr k = make_kernel(2);
  return k;
}

Complex at(const GenFunc& f, double x, double rho) {
  return eval(f, std::vector<double>{x}, EvalContext{rho, {}, 1e-9});
}

double central_difference(const GenFunc& f, double x, double rho) {
  const double h = 1e-5 * std::max(1.0, std::abs(x));
  return (at(f, x + h, rho) - at(f, x - h, rho)).real() / (2 * h);
}

StandardFunction poly(std::vector<double> c) { return StandardFunction::polynomial(Polynomial::univariate(c)); }

}  // namespace

TEST(GenFunc, LeafValues) {
  const Domain d = Domain::interval(-2.0, 2.0);
  const double rho = 0.1;
  EXPECT_NEAR(at(sigma_embed(StandardFunction::separable({Smooth1D::sin()}), d), 0.7, rho).real(), std::sin(0.7),
              1e-15);
  EXPECT_NEAR(at(kernel_genfunc(kernel(), d, {0.3}), 0.35, rho).real(), kernel()->psi(0.5) / rho, 1e-12);
  EXPECT_NEAR(at(scalar_genfunc(AsymptoticScalar::rho(), d), 0.0, rho).real(), rho, 0.0);
  EXPECT_NEAR(at(cutoff_genfunc(kernel(), d), 1.0, rho).real(), 1.0, 1e-13);
}

TEST(GenFunc, HeavisideConvolutionIsAntiderivative) {
  const Domain d = Domain::interval(-2.0, 2.0);
  const GenFunc h = convolution_genfunc(kernel(), Density::heaviside(), d);
  const double rho = 0.05;
  for (double x : {-0.06, -0.04, -0.01, 0.0, 0.013, 0.049, 0.2})
    EXPECT_NEAR(at(h, x, rho).real(), kernel()->Psi(x / rho), 1e-10) << x;
  for (double x : {-0.03, 0.0, 0.02})
    EXPECT_NEAR(at(derive(h, MultiIndex{1}), x, rho).real(), kernel()->psi(x / rho) / rho, 1e-8) << x;
}

TEST(GenFunc, ConvolutionReproducesCubic) {
  const Domain d = Domain::interval(-2.0, 2.0);
  const std::vector<double> c{0.3, -1.0, 0.5, 2.0};
  const GenFunc f = convolution_genfunc(kernel(), Density::polynomial(Polynomial::univariate(c)), d);
  for (double x : {-1.3, 0.0, 0.77})
    EXPECT_NEAR(at(f, x, 0.01).real(), c[0] + x * (c[1] + x * (c[2] + x * c[3])), 1e-12);
}

TEST(GenFunc, DeriveMatchesFiniteDifferences) {
  const Domain d = Domain::interval(-2.0, 2.0);
  const GenFunc D = kernel_genfunc(kernel(), d);
  const GenFunc s = sigma_embed(poly({0.0, 0.0, 1.0}), d);
  const GenFunc f = compose(UnaryFunction::sin(), s * D + AsymptoticScalar::monomial(Complex(0.5), Rational(-1)) *
                                                           sigma_embed(StandardFunction::separable({Smooth1D::cos()}), d));
  const GenFunc h = convolution_genfunc(kernel(), Density::heaviside(), d) * sigma_embed(poly({1.0, 2.0}), d);
  const double rho = 0.5;
  for (const GenFunc& g : {f, h, D * D, compose(UnaryFunction::exp(), D)}) {
    const GenFunc dg = derive(g, MultiIndex{1});
    for (double x : {-0.41, -0.1, 0.07, 0.33}) {
      const double exact = at(dg, x, rho).real();
      EXPECT_NEAR(central_difference(g, x, rho), exact, 1e-5 * std::max(1.0, std::abs(exact))) << x;
    }
  }
}

TEST(GenFunc, MixedPartialsCommute) {
  const Domain d = Domain::box({{-1.0, 1.0}, {-1.0, 1.0}});
  const GenFunc f = kernel_genfunc(kernel(), d, {0.1, -0.2}) *
                    sigma_embed(StandardFunction::separable({Smooth1D::exp(), Smooth1D::sin()}), d);
  const GenFunc a = derive(derive(f, MultiIndex{1, 0}), MultiIndex{0, 1});
  const GenFunc b = derive(f, MultiIndex{1, 1});
  const std::vector<double> x{0.15, -0.1};
  const EvalContext ctx{0.25, {}, 1e-9};
  EXPECT_NEAR(std::abs(eval(a, x, ctx) - eval(b, x, ctx)), 0.0, 1e-9);
}

TEST(GenFunc, SerialAndParallelGridsAgreeBitwise) {
  const Domain d = Domain::interval(-2.0, 2.0);
  const GenFunc f = cutoff_genfunc(kernel(), d) * convolution_genfunc(kernel(), Density::heaviside(), d) +
                    kernel_genfunc(kernel(), d, {0.5}) * sigma_embed(StandardFunction::separable({Smooth1D::sin()}), d);
  std::vector<std::vector<double>> pts;
  for (int i = 0; i < 301; ++i) pts.push_back({-1.9 + 3.8 * i / 300.0});
  const auto s = eval_grid(f, pts, 1.0 / 64, QuadConfig{}, Exec::serial);
  const auto p = eval_grid(f, pts, 1.0 / 64, QuadConfig{}, Exec::parallel);
  ASSERT_EQ(s.size(), p.size());
  for (std::size_t i = 0; i < s.size(); ++i) ASSERT_EQ(s[i], p[i]) << i;
}

TEST(GenFunc, DomainChecks) {
  const Domain a = Domain::interval(-1.0, 1.0), b = Domain::interval(-2.0, 2.0);
  const GenFunc fa = sigma_embed(poly({1.0}), a), fb = sigma_embed(poly({1.0}), b);
  EXPECT_THROW(fa + fb, DomainMismatch);
  EXPECT_THROW(fa * fb, DomainMismatch);
  EXPECT_THROW(restrict_to(fa, b), DomainMismatch);
  EXPECT_THROW(at(fa, 1.5, 0.1), OutsideDomain);
  EXPECT_NO_THROW(at(restrict_to(fb, a), 0.5, 0.1));
}

TEST(GenFunc, KernelPowerAndFeatures) {
  const Domain d = Domain::whole(1);
  const GenFunc D = kernel_genfunc(kernel(), d, {0.337});
  EXPECT_EQ(kernel_power(D * D * D), 3u);
  EXPECT_EQ(kernel_power(sigma_embed(poly({1.0}), d)), 0u);
  const auto feat = features(D, 0.01);
  bool has_center = false;
  for (const auto& p : feat.points) has_center = has_center || (p.size() == 1 && p[0] == 0.337);
  EXPECT_TRUE(has_center);
}

TEST(GenFunc, SupportOfShiftedKernel) {
  const GenFunc D = kernel_genfunc(kernel(), Domain::whole(1), {0.337});
  const auto cells = support_estimate(D, Box{{Interval{-1.0, 1.0}}}, 0.05, {1.0 / 256, 1.0 / 1024}, 1e-12);
  ASSERT_EQ(cells.size(), 1u);
  EXPECT_LE(cells[0].axes[0].lo, 0.337);
  EXPECT_GE(cells[0].axes[0].hi, 0.337);
}

TEST(GenFunc, NonAffinePushforwardDerivativeUnsupported) {
  const Domain x = Domain::interval(0.5, 2.0), y = Domain::interval(std::exp(0.5), std::exp(2.0));
  const Diffeo th = Diffeo::general_1d(
      "exp", [](double t) { return std::exp(t); }, [](double t) { return std::log(t); },
      [](double t) { return std::exp(t); });
  const GenFunc f = pushforward_genfunc(sigma_embed(poly({0.0, 1.0}), x), th, y);
  EXPECT_THROW(derive(f, MultiIndex{1}), UnsupportedTerm);
}
