#include <gtest/gtest.h>

#include <cmath>
#include <complex>
#include <vector>

#include "cyclic/power_series.hpp"
#include "cyclic/random.hpp"

using cyc::cplx;
using cyc::PowerSeries;

TEST(PowerSeries, DefaultIsZero) {
  PowerSeries p;
  EXPECT_EQ(p.degree(), 0u);
  EXPECT_EQ(p[0], cplx(0.0, 0.0));
  EXPECT_EQ(p[7], cplx(0.0, 0.0));
}

TEST(PowerSeries, HornerMatchesDirectSum) {
  cyc::Lcg64 g(3);
  const auto p = cyc::random_polynomial(g, 20);
  const cplx z{0.3, -0.7};
  cplx direct{0.0, 0.0};
  for (std::size_t k = 0; k <= 20; ++k) direct += p[k] * std::pow(z, static_cast<int>(k));
  EXPECT_LT(std::abs(p(z) - direct), 1e-13);
}

TEST(PowerSeries, RejectsBadCertification) {
  EXPECT_THROW(PowerSeries({1.0}, cyc::Certification{1.0, 2.0}), cyc::validation_error);
  EXPECT_THROW(PowerSeries({1.0}, cyc::Certification{2.0, -1.0}), cyc::validation_error);
}

TEST(PowerSeries, MultiplyTruncates) {
  const PowerSeries a({1.0, 1.0});
  const auto sq = cyc::multiply(a, a);
  ASSERT_EQ(sq.degree(), 2u);
  EXPECT_EQ(sq[1], cplx(2.0, 0.0));
  const auto cut = cyc::multiply(a, a, 1);
  EXPECT_EQ(cut.degree(), 1u);
}

TEST(PowerSeries, TruncatedAndPadded) {
  const PowerSeries a({1.0, 2.0, 3.0});
  EXPECT_EQ(a.truncated(1).degree(), 1u);
  EXPECT_EQ(a.truncated(10).degree(), 2u);
  const auto v = a.padded(4);
  ASSERT_EQ(v.size(), 5u);
  EXPECT_EQ(v[4], cplx(0.0, 0.0));
}

TEST(ExpSeries, ExponentialOfZ) {
  // exp(z) has coefficients 1/k!
  const std::vector<cplx> u{0.0, 1.0};
  const auto h = cyc::exp_series(u, 20);
  double fact = 1.0;
  for (std::size_t k = 0; k <= 20; ++k) {
    if (k > 0) fact *= static_cast<double>(k);
    EXPECT_NEAR(h[k].real(), 1.0 / fact, 1e-16 * (1.0 + 1.0 / fact));
  }
}

TEST(ExpSeries, GeometricLog) {
  // exp(-log(1 - a z)) = 1/(1 - a z): u_k = a^k / k
  const cplx a{0.3, 0.4};
  std::vector<cplx> u(31);
  for (std::size_t k = 1; k <= 30; ++k) u[k] = std::pow(a, static_cast<int>(k)) / static_cast<double>(k);
  const auto h = cyc::exp_series(u, 30);
  for (std::size_t k = 0; k <= 30; ++k) EXPECT_LT(std::abs(h[k] - std::pow(a, static_cast<int>(k))), 1e-14);
}

TEST(ExpSeries, MajorantDominates) {
  cyc::Lcg64 g(11);
  std::vector<cplx> u(41);
  std::vector<double> a(41);
  for (std::size_t k = 0; k <= 40; ++k) {
    u[k] = {cyc::uniform(g, -1, 1), cyc::uniform(g, -1, 1)};
    a[k] = std::abs(u[k]);
  }
  u[0] = u[0].real();
  a[0] = u[0].real();
  const auto h = cyc::exp_series(u, 40);
  const auto m = cyc::exp_series_majorant(a, 40);
  for (std::size_t k = 0; k <= 40; ++k) EXPECT_LE(std::abs(h[k]), m[k] * (1 + 1e-12));
}

TEST(ExpSeries, EmptyInputIsOne) {
  const auto h = cyc::exp_series(std::vector<cplx>{}, 3);
  EXPECT_EQ(h[0], cplx(1.0, 0.0));
  EXPECT_EQ(h[3], cplx(0.0, 0.0));
}
