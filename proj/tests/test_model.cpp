#include <gtest/gtest.h>

#include <cmath>

#include "cyclic/functions.hpp"
#include "cyclic/model.hpp"
#include "cyclic/random.hpp"

using cyc::cplx;
using cyc::PowerSeries;

TEST(Pairing, Examples) {
  const PowerSeries a({1.0, 1.0});
  const PowerSeries b({1.0, cplx{0.0, 1.0}});
  EXPECT_EQ(cyc::pairing(a, b), cplx(1.0, -1.0));
  EXPECT_EQ(cyc::pairing(a, PowerSeries::monomial(5)), cplx(0.0, 0.0));
  EXPECT_EQ(cyc::pairing(PowerSeries(), PowerSeries()), cplx(0.0, 0.0));
}

TEST(Kernel, AtOriginForAtom) {
  const double m = 0.5;
  const std::size_t K = 256;
  const auto theta = cyc::taylor_singular_inner(cyc::SingularMeasure::atom(0.0, m), K);
  const auto k = cyc::ktheta_kernel(theta, 0.0, K);
  EXPECT_NEAR(k.series[0].real(), 1.0 - std::exp(-2.0 * m), 1e-15);
  for (std::size_t n = 1; n <= 10; ++n) EXPECT_LT(std::abs(k.series[n] + std::exp(-m) * theta[n]), 1e-15);
  ASSERT_TRUE(k.kernel_point.has_value());
}

TEST(Kernel, ValueAtZero) {
  const std::size_t K = 512;
  const auto mu = cyc::SingularMeasure::atom(1.0, 0.3);
  const auto theta = cyc::taylor_singular_inner(mu, K);
  for (const cplx lam : {cplx{0.3, 0.1}, cplx{-0.5, 0.2}}) {
    const auto k = cyc::ktheta_kernel(theta, lam, K);
    const cplx expect = 1.0 - std::conj(cyc::eval_singular_inner(mu, lam)) * cyc::eval_singular_inner(mu, 0.0);
    EXPECT_LT(std::abs(k.series[0] - expect), 1e-10);
  }
  EXPECT_THROW(cyc::ktheta_kernel(theta, cplx{1.0, 0.0}, K), cyc::domain_error);
}

TEST(Kernel, MonomialInnerFunctionIsExact) {
  // theta = z^3: the model space is polynomials of degree < 3 and k_lambda = 1 + conj(l) z + conj(l)^2 z^2
  const auto theta = PowerSeries::monomial(3);
  const cplx lam{0.5, -0.25};
  const auto k = cyc::ktheta_kernel(theta, lam, 16);
  EXPECT_EQ(k.truncation_error, 0.0);
  EXPECT_LT(std::abs(k.series[1] - std::conj(lam)), 1e-16);
  EXPECT_LT(std::abs(k.series[2] - std::conj(lam * lam)), 1e-16);
  for (std::size_t n = 3; n <= 16; ++n) EXPECT_LT(std::abs(k.series[n]), 1e-16);

  cyc::Lcg64 g(13);
  const auto f = cyc::random_polynomial(g, 10);
  const auto p = cyc::project_ktheta(f, theta, 16);
  for (std::size_t n = 0; n < 3; ++n) EXPECT_LT(std::abs(p.series[n] - f[n]), 1e-15);
  for (std::size_t n = 3; n <= 16; ++n) EXPECT_LT(std::abs(p.series[n]), 1e-15);
}

TEST(Projection, OfOneIsKernelAtOrigin) {
  const std::size_t K = 300;
  const auto theta = cyc::taylor_singular_inner(cyc::SingularMeasure::atom(0.4, 0.7), K);
  const auto p = cyc::project_ktheta(PowerSeries::constant(1.0), theta, K);
  const auto k = cyc::ktheta_kernel(theta, 0.0, K);
  EXPECT_LT((p.series - k.series).l2_norm(), 1e-15);
  EXPECT_FALSE(p.kernel_point.has_value());
}

TEST(Projection, AnnihilatesThetaZ) {
  const std::size_t K = 512;
  const auto theta = cyc::taylor_singular_inner(cyc::SingularMeasure::atom(0.0, 0.2), K);
  const auto f = cyc::multiply(theta, PowerSeries::monomial(1), K);
  const auto p = cyc::project_ktheta(f, theta, K);
  // only the dropped tail of theta z can survive
  EXPECT_LE(p.series.l2_norm(), cyc::inner_tail_norm(theta, K - 1) + 1e-12);
  EXPECT_THROW(cyc::project_ktheta(PowerSeries::monomial(K + 1), theta, K), cyc::parameter_error);
}

TEST(WeakCyclicity, ControlsAndBounds) {
  const std::size_t K = 512;
  const auto theta = cyc::taylor_singular_inner(cyc::SingularMeasure::atom(0.0, 0.5), K);
  cyc::Lcg64 g(17);
  const auto p = cyc::random_polynomial(g, 10);

  const cyc::KThetaElement zero{PowerSeries::monomial(K, 0.0), std::nullopt, 0.0};
  EXPECT_EQ(cyc::weak_cyclicity_residual(zero, theta, p).orth, 0.0);

  const cyc::KThetaElement bad{theta, std::nullopt, 0.0};
  EXPECT_GT(cyc::weak_cyclicity_residual(bad, theta, PowerSeries::constant(1.0)).orth, 0.5);

  const auto k = cyc::ktheta_kernel(theta, cplx{0.2, 0.3}, K);
  const auto r = cyc::weak_cyclicity_residual(k, theta, p);
  EXPECT_EQ(r.anchor, 0.0);
  EXPECT_LE(r.orth, r.orth_bound + 1e-12);
}
