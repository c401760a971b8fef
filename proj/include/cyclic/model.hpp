#pragma once

// Model space K_theta = H^2 minus theta H^2, in coefficient space. The inner
// function enters as its Taylor series; its missing H^2 mass
// sqrt(1 - sum |theta_k|^2) bounds every truncation effect below.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <optional>
#include <vector>

#include "cyclic/errors.hpp"
#include "cyclic/power_series.hpp"

namespace cyc {

/// sum_k f_k conj(g_k), shorter side zero-padded.
inline cplx pairing(const PowerSeries& f, const PowerSeries& g) {
  const auto a = f.coefficients();
  const auto b = g.coefficients();
  cplx s{0.0, 0.0};
  const std::size_t n = std::min(a.size(), b.size());
  for (std::size_t k = 0; k < n; ++k) s += a[k] * std::conj(b[k]);
  return s;
}

struct KThetaElement {
  PowerSeries series;
  /// Kernel parameter, empty for projected elements.
  std::optional<cplx> kernel_point;
  /// H^2 distance to the exact element.
  double truncation_error = 0.0;
};

/// sqrt(max(0, 1 - sum_{k <= n} |theta_k|^2)), the H^2 norm of the dropped tail of an inner function.
inline double inner_tail_norm(const PowerSeries& theta, std::size_t n = static_cast<std::size_t>(-1)) {
  const auto c = theta.coefficients();
  const std::size_t m = std::min(c.size(), n == static_cast<std::size_t>(-1) ? c.size() : n + 1);
  double s = 0.0;
  for (std::size_t k = 0; k < m; ++k) s += std::norm(c[k]);
  return std::sqrt(std::max(0.0, 1.0 - s));
}

/**
 * @brief Reproducing kernel (1 - conj(theta(lambda)) theta(z)) / (1 - conj(lambda) z), degree K.
 *
 * theta must be the Taylor series of an inner function.
 */
inline KThetaElement ktheta_kernel(const PowerSeries& theta, cplx lambda, std::size_t K) {
  const double rl = std::abs(lambda);
  if (!(rl < 1.0)) throw domain_error("ktheta_kernel: lambda must satisfy |lambda| < 1");
  const double tail = inner_tail_norm(theta, K);
  const auto t = theta.truncated(K);
  const cplx th_l = t(lambda);
  // |theta(lambda) - theta_K(lambda)| <= ||tail||_2 * |lambda|^{K+1} / sqrt(1 - |lambda|^2)
  const double th_err = tail * std::pow(rl, static_cast<double>(K + 1)) / std::sqrt(1.0 - rl * rl);
  std::vector<cplx> k(K + 1);
  const cplx lc = std::conj(lambda);
  const cplx tc = std::conj(th_l);
  cplx prev{0.0, 0.0};
  for (std::size_t n = 0; n <= K; ++n) {
    const cplx a = (n == 0 ? cplx{1.0, 0.0} : cplx{0.0, 0.0}) - tc * t[n];
    prev = a + lc * prev;
    k[n] = prev;
  }
  KThetaElement out;
  out.kernel_point = lambda;
  out.truncation_error = std::abs(prev) * rl / std::sqrt(1.0 - rl * rl) + std::abs(th_l) * tail / (1.0 - rl) +
                         th_err / (1.0 - rl);
  out.series = PowerSeries(std::move(k));
  return out;
}

/**
 * @brief f - theta P_+(conj(theta) f), degree K.
 *
 * Coefficients up to K depend only on theta_0 .. theta_K and are exact; the
 * dropped part of theta g is bounded by ||g||_1 times the H^2 tail of theta.
 */
inline KThetaElement project_ktheta(const PowerSeries& f, const PowerSeries& theta, std::size_t K) {
  detail::require_param(f.degree() <= K, "project_ktheta: degree of f exceeds K");
  const auto fc = f.coefficients();
  const std::size_t d = f.degree();
  std::vector<cplx> g(d + 1, cplx{0.0, 0.0});
  for (std::size_t m = 0; m <= d; ++m) {
    cplx s{0.0, 0.0};
    for (std::size_t k = m; k <= d; ++k) s += fc[k] * std::conj(theta[k - m]);
    g[m] = s;
  }
  double g1 = 0.0;
  for (const auto& x : g) g1 += std::abs(x);
  const auto tg = multiply(theta.truncated(K), PowerSeries(std::move(g)), K);
  const auto res = PowerSeries(f.padded(K)) - tg;
  KThetaElement out;
  out.series = res.truncated(K);
  out.truncation_error = g1 * inner_tail_norm(theta, K > d ? K - d : 0);
  return out;
}

struct WeakCyclicityResidual {
  /// |<f, theta p_n>|, zero for exact elements of K_theta.
  double orth;
  /// |<f, 1> - f(0)|
  double anchor;
  /// truncation_error(f) * ||p_n||_2, which dominates orth up to rounding.
  double orth_bound;
};

inline WeakCyclicityResidual weak_cyclicity_residual(const KThetaElement& f, const PowerSeries& theta,
                                                     const PowerSeries& p) {
  const std::size_t K = f.series.degree();
  const auto tp = multiply(theta.truncated(K), p, K);
  WeakCyclicityResidual r;
  r.orth = std::abs(pairing(f.series, tp));
  r.anchor = std::abs(pairing(f.series, PowerSeries::constant(1.0)) - f.series[0]);
  r.orth_bound = f.truncation_error * p.l2_norm();
  return r;
}

}  // namespace cyc
