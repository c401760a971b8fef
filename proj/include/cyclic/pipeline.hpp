#pragma once

// End-to-end non-membership run: moment weight Lambda from 1/lambda, decay
// weight w, a measure dominating w, approximants p_n, then
//   B_n = ||theta p_n - 1||^2 in the Lambda-Bergman norm
// and lower-bound certificates for sum lambda_k |f_k|^2 on kernel elements f.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "cyclic/cyclicity.hpp"
#include "cyclic/errors.hpp"
#include "cyclic/functions.hpp"
#include "cyclic/growth_weight.hpp"
#include "cyclic/model.hpp"
#include "cyclic/power_series.hpp"
#include "cyclic/weights.hpp"

namespace cyc {

struct PipelineConfig {
  LambdaSequence lambda = LambdaSequence::power(1.0);
  SingularMeasure shape = SingularMeasure::atom(0.0, 1.0);
  std::vector<int> n_list{2, 4, 8, 16, 32};
  std::size_t K = 4096;
  std::vector<cplx> kernel_points{cplx{0.0, 0.0}};
  std::size_t n_max = 400;
  std::size_t multiplier_levels = 128;
  /// Overall factor of w; smaller values let a heavier measure dominate w.
  double weight_scale = std::ldexp(1.0, -12);
  double r_max = default_r_max;
  std::size_t envelope_angles = default_envelope_angles;
  std::size_t radii_count = 64;
  std::size_t angle_count = default_verification_angles;
  double divergence_threshold = 0.9;
  /// c in sum |g_k|^2 / lambda_k <= c B
  double bergman_constant = 0.5;
};

struct PipelineLevel {
  int n = 0;
  std::size_t degree = 0;
  double sup_error = 0.0;
  double B = 0.0;
  /// Bound on the part of B carried by coefficients beyond K.
  double B_tail_bound = 0.0;
  /// max over the grid of |g_n|^2 w^2 / 4 where Lambda > 0; <= 1 means |g_n|^2 Lambda <= 4 Lambda / w^2.
  double domination_ratio = 0.0;
  /// max over the grid of |theta p_n| w
  double growth = 0.0;
};

struct PipelineCertificate {
  int n = 0;
  cplx kernel_point;
  double f0_abs = 0.0;
  /// threshold * |f(0)|^2 / (c B_n)
  double target = 0.0;
  std::optional<std::size_t> K_prime;
  /// S_{K'} when reached, else S_K
  double S = 0.0;
  double kernel_truncation_error = 0.0;
  bool reached() const { return K_prime.has_value(); }
};

struct PipelineReport {
  PipelineConfig config;
  double scale = 0.0;
  double scaled_mass = 0.0;
  double lambda_residual = 0.0;
  std::vector<PipelineLevel> levels;
  std::vector<PipelineCertificate> certificates;
  double decay_ratio = 0.0;
  bool decay_ok = true;
  bool domination_ok = true;
  bool divergence_ok = true;
  bool all_pass() const { return decay_ok && domination_ok && divergence_ok; }
};

inline void validate(const PipelineConfig& c) {
  detail::require_param(c.lambda.is_named(), "theorem_pipeline: lambda must be a named family");
  detail::require_param(!c.n_list.empty(), "theorem_pipeline: n_list must not be empty");
  for (int n : c.n_list) detail::require_param(n >= 2, "theorem_pipeline: n values must be >= 2");
  detail::require_param(c.K >= 1, "theorem_pipeline: K must be positive");
  for (const auto& z : c.kernel_points)
    detail::require_param(std::abs(z) < 1.0, "theorem_pipeline: kernel points must lie in the disk");
  detail::require_param(c.divergence_threshold > 0.0 && c.divergence_threshold <= 1.0,
                        "theorem_pipeline: divergence threshold must lie in (0, 1]");
  detail::require_param(c.bergman_constant > 0.0, "theorem_pipeline: Bergman constant must be positive");
  detail::require_param(c.weight_scale > 0.0 && c.weight_scale < 1.0, "theorem_pipeline: weight_scale must lie in (0, 1)");
  detail::require_param(c.radii_count >= 1 && c.angle_count >= 1, "theorem_pipeline: grids must be nonempty");
}

inline PipelineReport theorem_pipeline(const PipelineConfig& cfg) {
  validate(cfg);
  PipelineReport rep;
  rep.config = cfg;

  const auto mu = cfg.lambda.reciprocals(cfg.n_max);
  const auto Lambda = moment_weight(mu, cfg.n_max);
  rep.lambda_residual = Lambda.truncation().residual;
  const auto w = decay_weight(Lambda, cfg.multiplier_levels, cfg.weight_scale);
  const auto scaled = scale_mass_to_dominate(cfg.shape, w, cfg.r_max, cfg.envelope_angles);
  rep.scale = scaled.scale;
  rep.scaled_mass = scaled.measure.total_mass();
  const auto bundle = build_approximants(scaled.measure, w, cfg.n_list, cfg.r_max, cfg.envelope_angles);

  const auto theta = taylor_singular_inner(scaled.measure, cfg.K);
  const auto moments = monomial_moments(Lambda, cfg.K + 1);

  // closed-form theta on the verification grid
  const auto radii = verification_radii(cfg.radii_count);
  std::vector<cplx> zs;
  std::vector<cplx> th;
  std::vector<double> wr;
  std::vector<bool> lam_pos;
  for (double r : radii) {
    const double wv = w(r);
    const bool pos = Lambda(r) > 0.0;
    for (std::size_t j = 0; j < cfg.angle_count; ++j) {
      const cplx z = std::polar(r, two_pi * static_cast<double>(j) / static_cast<double>(cfg.angle_count));
      zs.push_back(z);
      th.push_back(eval_singular_inner(scaled.measure, z));
      wr.push_back(wv);
      lam_pos.push_back(pos);
    }
  }

  for (const auto& e : bundle.entries) {
    PipelineLevel lv;
    lv.n = e.n;
    lv.degree = e.p.degree();
    lv.sup_error = e.sup_error;
    auto g = multiply(theta, e.p, cfg.K).padded(cfg.K);
    g[0] -= 1.0;
    double head = 0.0;
    for (std::size_t k = 0; k <= cfg.K; ++k) {
      lv.B += std::norm(g[k]) * 2.0 * moments[k];
      head += std::norm(g[k]);
    }
    // ||theta p - 1||_2^2 = ||p||^2 - 2 Re(theta(0) p(0)) + 1 since theta is inner
    const double full = e.p.l2_norm() * e.p.l2_norm() - 2.0 * std::real(theta[0] * e.p[0]) + 1.0;
    lv.B_tail_bound = 2.0 * moments[cfg.K + 1] * std::max(0.0, full - head);
    for (std::size_t i = 0; i < zs.size(); ++i) {
      const cplx tp = th[i] * e.p(zs[i]);
      lv.growth = std::max(lv.growth, std::abs(tp) * wr[i]);
      if (lam_pos[i]) lv.domination_ratio = std::max(lv.domination_ratio, std::norm(tp - 1.0) * wr[i] * wr[i] / 4.0);
    }
    if (lv.domination_ratio > 1.0) rep.domination_ok = false;
    rep.levels.push_back(lv);
  }

  if (rep.levels.size() >= 2) {
    for (std::size_t i = 1; i < rep.levels.size(); ++i)
      if (rep.levels[i].B > rep.levels[i - 1].B) rep.decay_ok = false;
    rep.decay_ratio = rep.levels.back().B / rep.levels.front().B;
    if (!(rep.decay_ratio < 0.25)) rep.decay_ok = false;
  }

  for (const auto& lam0 : cfg.kernel_points) {
    const auto f = ktheta_kernel(theta, lam0, cfg.K);
    const auto c = f.series.coefficients();
    std::vector<double> S(c.size());
    double acc = 0.0;
    for (std::size_t k = 0; k < c.size(); ++k) {
      acc += cfg.lambda(k) * std::norm(c[k]);
      S[k] = acc;
    }
    for (const auto& lv : rep.levels) {
      PipelineCertificate cert;
      cert.n = lv.n;
      cert.kernel_point = lam0;
      cert.f0_abs = std::abs(c[0]);
      cert.target = cfg.divergence_threshold * std::norm(c[0]) / (cfg.bergman_constant * lv.B);
      cert.kernel_truncation_error = f.truncation_error;
      const auto it = std::find_if(S.begin(), S.end(), [&](double s) { return s >= cert.target; });
      if (it != S.end()) {
        cert.K_prime = static_cast<std::size_t>(it - S.begin());
        cert.S = *it;
      } else {
        cert.S = S.back();
        rep.divergence_ok = false;
      }
      rep.certificates.push_back(cert);
    }
  }
  return rep;
}

}  // namespace cyc
