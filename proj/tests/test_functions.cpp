#include <gtest/gtest.h>

#include <cmath>
#include <complex>

#include "cyclic/functions.hpp"
#include "cyclic/random.hpp"

using cyc::cplx;

TEST(CirclePoint, Normalizes) {
  EXPECT_NEAR(cyc::CirclePoint(-1.0).angle(), cyc::two_pi - 1.0, 1e-15);
  EXPECT_EQ(cyc::CirclePoint(cyc::two_pi).angle(), 0.0);
  EXPECT_THROW(cyc::CirclePoint(NAN), cyc::validation_error);
}

TEST(SingularMeasure, Validation) {
  EXPECT_THROW(cyc::SingularMeasure::atom(0.0, 0.0), cyc::validation_error);
  EXPECT_THROW(cyc::SingularMeasure({}, {}), cyc::validation_error);
  cyc::CantorComponent c;
  c.arc_width = 1.0;
  c.total_mass = 1.0;
  c.depth = 0;
  EXPECT_THROW(cyc::SingularMeasure({}, {c}), cyc::validation_error);
}

TEST(SingularMeasure, CantorExpansion) {
  cyc::CantorComponent c;
  c.center = cyc::CirclePoint(1.0);
  c.arc_width = 0.9;
  c.depth = 6;
  c.total_mass = 0.5;
  const cyc::SingularMeasure m({}, {c});
  EXPECT_EQ(m.expanded().size(), 64u);
  double s = 0.0;
  for (const auto& a : m.expanded()) {
    s += a.mass;
    const double d = std::remainder(a.angle - 1.0, cyc::two_pi);
    EXPECT_LE(std::abs(d), 0.45);
  }
  EXPECT_NEAR(s, 0.5, 1e-15);
  EXPECT_NEAR(m.total_mass(), 0.5, 1e-15);
  EXPECT_NEAR(m.scaled(0.25).total_mass(), 0.125, 1e-15);
}

TEST(Singular, AtomClosedForm) {
  const double m = 0.7;
  const auto mu = cyc::SingularMeasure::atom(0.4, m);
  const cplx zeta = std::polar(1.0, 0.4);
  for (const cplx z : {cplx{0.0, 0.0}, cplx{0.3, 0.2}, cplx{-0.8, 0.1}}) {
    const cplx expect = std::exp(-m * (zeta + z) / (zeta - z));
    EXPECT_LT(std::abs(cyc::eval_singular_inner(mu, z) - expect), 1e-14);
  }
  EXPECT_THROW(cyc::eval_singular_inner(mu, cplx{1.0, 0.0}), cyc::domain_error);
  EXPECT_THROW(cyc::eval_herglotz(mu, cplx{0.0, 1.5}), cyc::domain_error);
}

TEST(Blaschke, ZerosAndBoundary) {
  const cyc::BlaschkeZeros b({cplx{0.5, 0.0}, cplx{0.0, -0.3}});
  EXPECT_LT(std::abs(cyc::eval_blaschke(b, cplx{0.5, 0.0})), 1e-16);
  EXPECT_NEAR(std::abs(cyc::eval_blaschke(b, std::polar(1.0 - 1e-12, 2.0))), 1.0, 1e-9);
  // normalization conj(a)/|a| makes B(0) = prod |a|
  EXPECT_NEAR(std::real(cyc::eval_blaschke(b, 0.0)), 0.5 * 0.3, 1e-15);
  EXPECT_NEAR(std::real(cyc::eval_blaschke(cyc::BlaschkeZeros({cplx{0.4, 0.0}}), 0.0)), -0.4, 1e-16);
  EXPECT_THROW(cyc::BlaschkeZeros({cplx{0.0, 0.0}}), cyc::validation_error);
  EXPECT_THROW(cyc::BlaschkeZeros({cplx{1.0, 0.0}}), cyc::validation_error);
}

TEST(Inner, ProductOfParts) {
  const cyc::InnerFunctionSpec spec(cyc::BlaschkeZeros({cplx{0.2, 0.1}}), cyc::SingularMeasure::atom(1.0, 0.5));
  const cplx z{0.1, -0.4};
  const cplx expect =
      cyc::eval_blaschke(spec.zeros, z) * cyc::eval_singular_inner(*spec.singular, z);
  EXPECT_LT(std::abs(cyc::eval_inner(spec, z) - expect), 1e-15);
  EXPECT_THROW(cyc::InnerFunctionSpec(cyc::BlaschkeZeros{}, std::nullopt), cyc::validation_error);
}

TEST(Outer, ConstantLogModulus) {
  const auto d = cyc::BoundaryLogModulus::constant(0.3);
  EXPECT_LT(std::abs(cyc::eval_outer(d, cplx{0.2, 0.5}) - std::exp(0.3)), 1e-13);
  EXPECT_THROW(cyc::eval_outer(d, 0.0, 32), cyc::parameter_error);
}

TEST(Outer, PiecewiseModulusAgainstPoissonIntegral) {
  // |F(z)| = exp(Poisson integral of log|g|); oracle: closed-form Poisson integral of an indicator
  const cyc::BoundaryLogModulus d({0.0, 2.0}, {1.0, -0.5});
  const cplx z{0.3, 0.4};
  const double r = std::abs(z), phi = std::arg(z);
  auto harmonic_measure = [&](double a, double b) {
    // int_a^b P_r(phi - t) dt / (2 pi) via the antiderivative 2 atan(((1+r)/(1-r)) tan(x/2))
    auto F = [&](double t) {
      const double x = t - phi;
      return std::atan2((1 + r) * std::sin(x / 2), (1 - r) * std::cos(x / 2));
    };
    return (F(b) - F(a)) / M_PI;
  };
  const double w1 = harmonic_measure(0.0, 2.0);
  const double logmod = 1.0 * w1 - 0.5 * (1.0 - w1);
  EXPECT_NEAR(std::log(std::abs(cyc::eval_outer(d, z, 4096))), logmod, 1e-6);
}

TEST(Envelope, ClosedFormAndZero) {
  const cyc::InnerFunctionSpec spec(cyc::SingularMeasure::atom(0.0, 1.0));
  EXPECT_NEAR(cyc::min_modulus_envelope(spec, 0.0).value, std::exp(-1.0), 1e-15);
  EXPECT_NEAR(cyc::min_modulus_envelope(spec, 0.5, 8).value, std::exp(-3.0), 1e-15);
  EXPECT_THROW(cyc::min_modulus_envelope(spec, 1.0), cyc::domain_error);
  const cyc::InnerFunctionSpec withzero(cyc::BlaschkeZeros({cplx{0.3, 0.0}}), std::nullopt);
  EXPECT_TRUE(cyc::min_modulus_envelope(withzero, 0.5).zeros_inside);
  EXPECT_FALSE(cyc::min_modulus_envelope(withzero, 0.2).zeros_inside);
}

TEST(Herglotz, CoefficientsOfAtom) {
  const auto mu = cyc::SingularMeasure::atom(0.5, 2.0);
  const auto u = cyc::herglotz_coefficients(mu, 5);
  EXPECT_NEAR(u[0].real(), 2.0, 1e-15);
  for (int k = 1; k <= 5; ++k) EXPECT_LT(std::abs(u[k] - 4.0 * std::polar(1.0, -0.5 * k)), 1e-14);
}

TEST(Taylor, RecurrenceAgreesWithFft) {
  cyc::CantorComponent c;
  c.arc_width = 1.0;
  c.depth = 5;
  c.total_mass = 0.5;
  const cyc::SingularMeasure mu({cyc::Atom{cyc::CirclePoint(2.0), 0.5}}, {c});
  const std::size_t K = 64;
  const auto rec = cyc::taylor_singular_inner(mu, K);
  const auto fft = cyc::taylor_via_fft([&](cplx z) { return cyc::eval_singular_inner(mu, z); }, 0.9, K, 1024,
                                       cyc::Certification{1.0, 1.0});
  for (std::size_t k = 0; k <= K; ++k) EXPECT_LT(std::abs(rec[k] - fft.series[k]), 1e-10) << k;
  ASSERT_TRUE(fft.aliasing_bound.has_value());
}

TEST(Taylor, FftPreconditions) {
  auto f = [](cplx z) { return z; };
  EXPECT_THROW(cyc::taylor_via_fft(f, 0.5, 16, 32), cyc::parameter_error);
  EXPECT_THROW(cyc::taylor_via_fft(f, 0.5, 16, 96), cyc::parameter_error);
  EXPECT_THROW(cyc::taylor_via_fft(f, 1.5, 16, 64), cyc::parameter_error);
  const auto r = cyc::taylor_via_fft(f, 0.5, 16, 64);
  EXPECT_NEAR(r.series[1].real(), 1.0, 1e-14);
  EXPECT_FALSE(r.aliasing_bound.has_value());
}

TEST(Taylor, InnerHasUnitNorm) {
  const auto th = cyc::taylor_singular_inner(cyc::SingularMeasure::atom(0.0, 0.05), 4096);
  EXPECT_LE(th.l2_norm(), 1.0 + 1e-12);
  EXPECT_GT(th.l2_norm(), 0.99);
}
