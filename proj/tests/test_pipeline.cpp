#include <gtest/gtest.h>

#include "cyclic/pipeline.hpp"

TEST(Pipeline, Validation) {
  auto bad = [](auto mutate) {
    cyc::PipelineConfig c;
    mutate(c);
    return c;
  };
  EXPECT_THROW(cyc::validate(bad([](auto& c) { c.n_list.clear(); })), cyc::parameter_error);
  EXPECT_THROW(cyc::validate(bad([](auto& c) { c.n_list = {1}; })), cyc::parameter_error);
  EXPECT_THROW(cyc::validate(bad([](auto& c) { c.K = 0; })), cyc::parameter_error);
  EXPECT_THROW(cyc::validate(bad([](auto& c) { c.kernel_points = {cyc::cplx{1.0, 0.0}}; })), cyc::parameter_error);
  EXPECT_THROW(cyc::validate(bad([](auto& c) { c.divergence_threshold = 0.0; })), cyc::parameter_error);
  EXPECT_THROW(cyc::validate(bad([](auto& c) { c.bergman_constant = 0.0; })), cyc::parameter_error);
  EXPECT_THROW(cyc::validate(bad([](auto& c) { c.weight_scale = 1.0; })), cyc::parameter_error);
  EXPECT_THROW(cyc::validate(bad([](auto& c) { c.radii_count = 0; })), cyc::parameter_error);
  EXPECT_THROW(cyc::validate(bad([](auto& c) {
                 c.lambda = cyc::LambdaSequence(cyc::LambdaSequence::Tabulated{{1.0, 2.0}});
               })),
               cyc::parameter_error);
  EXPECT_NO_THROW(cyc::validate(cyc::PipelineConfig{}));
}

TEST(Pipeline, SingleLevel) {
  cyc::PipelineConfig c;
  c.n_list = {2};
  c.K = 512;
  c.radii_count = 8;
  c.angle_count = 64;
  const auto rep = cyc::theorem_pipeline(c);
  ASSERT_EQ(rep.levels.size(), 1u);
  EXPECT_TRUE(rep.decay_ok);
  EXPECT_EQ(rep.decay_ratio, 0.0);
  EXPECT_EQ(rep.certificates.size(), 1u);
}

TEST(Pipeline, SmallRunIsConsistent) {
  cyc::PipelineConfig c;
  c.K = 1024;
  c.kernel_points = {cyc::cplx{0.0, 0.0}, cyc::cplx{0.3, 0.0}};
  c.radii_count = 16;
  c.angle_count = 128;
  const auto rep = cyc::theorem_pipeline(c);
  ASSERT_EQ(rep.levels.size(), c.n_list.size());
  EXPECT_EQ(rep.certificates.size(), c.n_list.size() * 2);
  EXPECT_DOUBLE_EQ(rep.scaled_mass, rep.scale);
  for (const auto& lv : rep.levels) {
    EXPECT_GT(lv.B, 0.0);
    EXPECT_GE(lv.B_tail_bound, 0.0);
    EXPECT_LE(lv.growth, 2.0);
    EXPECT_LE(lv.sup_error, 1.0 / lv.n);
  }
  for (const auto& cert : rep.certificates) {
    double B = 0.0;
    for (const auto& lv : rep.levels)
      if (lv.n == cert.n) B = lv.B;
    EXPECT_DOUBLE_EQ(cert.target, 0.9 * cert.f0_abs * cert.f0_abs / (0.5 * B));
    if (cert.reached()) {
      EXPECT_GE(cert.S, cert.target);
    }
  }
}
