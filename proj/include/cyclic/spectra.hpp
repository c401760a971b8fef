#pragma once

// Coefficient growth allowed by boundary smoothness: from a modulus of
// continuity omega build alpha_n with sum alpha_n |f_n|^2 <= C ||f||_omega^2.

#include <algorithm>
#include <bit>
#include <cmath>
#include <complex>
#include <limits>
#include <cstddef>
#include <string>
#include <type_traits>
#include <utility>
#include <variant>
#include <vector>

#include "cyclic/errors.hpp"
#include "cyclic/power_series.hpp"

namespace cyc {

/// Increasing, concave-type gauge with omega(0) = 0, evaluated on [0, 2].
class ModulusOfContinuity {
 public:
  /// omega(t) = t^a, 0 < a < 1.
  struct Hoelder {
    double a;
  };
  /// omega(t) = log(e/t)^{-p}. t / omega(t) stays monotone on [0, 2] only when p <= 1 - log 2.
  struct LogInverse {
    double p;
  };
  /// Piecewise-linear through (t_i, v_i), t_0 = 0, v_0 = 0, concave, last breakpoint >= 2.
  struct Tabulated {
    std::vector<double> breakpoints;
    std::vector<double> values;
  };
  using Family = std::variant<Hoelder, LogInverse, Tabulated>;

  static inline const double log_inverse_max_p = 1.0 - std::log(2.0);

  explicit ModulusOfContinuity(Family f) : family_(std::move(f)) { validate(); }
  static ModulusOfContinuity hoelder(double a) { return ModulusOfContinuity(Hoelder{a}); }
  static ModulusOfContinuity log_inverse(double p) { return ModulusOfContinuity(LogInverse{p}); }

  const Family& family() const { return family_; }
  bool is_named() const { return !std::holds_alternative<Tabulated>(family_); }

  double operator()(double t) const {
    if (!(t >= 0.0)) throw domain_error("ModulusOfContinuity: argument must be nonnegative");
    if (t == 0.0) return 0.0;
    if (const auto* h = std::get_if<Hoelder>(&family_)) return std::pow(t, h->a);
    if (const auto* l = std::get_if<LogInverse>(&family_)) return std::pow(1.0 - std::log(std::min(t, 2.0)), -l->p);
    const auto& tab = std::get<Tabulated>(family_);
    const auto& b = tab.breakpoints;
    if (t >= b.back()) return tab.values.back();
    const auto i = static_cast<std::size_t>(std::upper_bound(b.begin(), b.end(), t) - b.begin());
    const double s = (t - b[i - 1]) / (b[i] - b[i - 1]);
    return tab.values[i - 1] + s * (tab.values[i] - tab.values[i - 1]);
  }

  std::string name() const {
    return std::visit(
        [](const auto& f) -> std::string {
          using T = std::decay_t<decltype(f)>;
          if constexpr (std::is_same_v<T, Hoelder>) return "hoelder";
          else if constexpr (std::is_same_v<T, LogInverse>) return "log-inverse";
          else return "tabulated";
        },
        family_);
  }

 private:
  void validate() const {
    if (const auto* h = std::get_if<Hoelder>(&family_)) {
      detail::require(h->a > 0.0 && h->a < 1.0, "ModulusOfContinuity: Hoelder exponent must lie in (0, 1)");
    } else if (const auto* l = std::get_if<LogInverse>(&family_)) {
      detail::require(l->p > 0.0 && l->p <= log_inverse_max_p,
                      "ModulusOfContinuity: LogInverse exponent must lie in (0, 1 - log 2]");
    } else {
      const auto& t = std::get<Tabulated>(family_);
      const auto& b = t.breakpoints;
      const auto& v = t.values;
      detail::require(b.size() >= 2 && b.size() == v.size(), "ModulusOfContinuity: tabulated needs matching arrays");
      detail::require(b.front() == 0.0 && v.front() == 0.0, "ModulusOfContinuity: tabulated must start at (0, 0)");
      detail::require(b.back() >= 2.0, "ModulusOfContinuity: tabulated must cover [0, 2]");
      double prev_slope = std::numeric_limits<double>::infinity();
      for (std::size_t i = 1; i < b.size(); ++i) {
        detail::require(b[i] > b[i - 1], "ModulusOfContinuity: breakpoints must increase");
        detail::require(v[i] > v[i - 1], "ModulusOfContinuity: values must increase");
        const double slope = (v[i] - v[i - 1]) / (b[i] - b[i - 1]);
        // concavity through the origin keeps omega(t)/t nonincreasing
        detail::require(slope <= prev_slope, "ModulusOfContinuity: tabulated values must be concave");
        prev_slope = slope;
      }
    }
  }

  Family family_;
};

struct RadialDifference {
  double lhs;
  double rhs;
};

/**
 * @brief sum (1 - r^n)^2 |f_n|^2 against a circle quadrature of |f(zeta) - f(r zeta)|^2.
 *
 * The integrand is a trigonometric polynomial of degree 2 deg f, so a grid of
 * more than 2 deg f + 1 nodes integrates it exactly.
 */
inline RadialDifference radial_difference_identity(const PowerSeries& f, double r) {
  detail::require_param(r > 0.0 && r < 1.0, "radial_difference_identity: r must lie in (0, 1)");
  const auto c = f.coefficients();
  RadialDifference out{0.0, 0.0};
  double rn = 1.0;
  for (std::size_t n = 0; n < c.size(); ++n) {
    out.lhs += (1.0 - rn) * (1.0 - rn) * std::norm(c[n]);
    rn *= r;
  }
  const std::size_t nodes = std::max<std::size_t>(8, std::bit_ceil(2 * c.size() + 2));
  double acc = 0.0;
  for (std::size_t j = 0; j < nodes; ++j) {
    const cplx z = std::polar(1.0, two_pi * static_cast<double>(j) / static_cast<double>(nodes));
    acc += std::norm(f(z) - f(r * z));
  }
  out.rhs = acc / static_cast<double>(nodes);
  return out;
}

struct EmbeddingLevel {
  int N;
  double r;
  /// 1 - r_N kept separately, it underflows r's resolution first
  double gap;
  std::size_t K;
};

struct EmbeddingSequence {
  std::vector<EmbeddingLevel> levels;
  std::vector<double> alpha;
  double constant = 0.0;
  std::vector<std::string> warnings;
};

/// 1 + (1 - 2^{-1/2})^{-2}: (1 - r^n)^2 > (1 - 2^{-1/2})^2 once r^{2n} < 1/2.
inline const double embedding_constant = 1.0 + 1.0 / ((1.0 - std::sqrt(0.5)) * (1.0 - std::sqrt(0.5)));

/// Largest t in (0, 1] with omega(t) <= target: bisection on log t, then on t itself to full precision.
inline double omega_level_gap(const ModulusOfContinuity& omega, double target) {
  if (omega(1.0) <= target) return 1.0;
  double lo = -745.0;  // log of the smallest subnormal
  double hi = 0.0;
  if (omega(std::exp(lo)) > target) return 0.0;
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid == lo || mid == hi) break;
    if (omega(std::exp(mid)) <= target) lo = mid;
    else hi = mid;
  }
  double a = std::exp(lo);
  double b = std::exp(hi);
  if (omega(a) > target) return 0.0;
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (a + b);
    if (mid == a || mid == b) break;
    if (omega(mid) <= target) a = mid;
    else b = mid;
  }
  return a;
}

inline EmbeddingSequence embedding_sequence(const ModulusOfContinuity& omega, int N_max, std::size_t n_max) {
  detail::require_param(N_max >= 0 && N_max <= 1000, "embedding_sequence: N_max must lie in [0, 1000]");
  EmbeddingSequence seq;
  seq.constant = embedding_constant;
  seq.alpha.assign(n_max + 1, 1.0);
  const double ln2 = std::log(2.0);
  std::size_t prev_K = 0;
  for (int N = 1; N <= N_max; ++N) {
    const double t = omega_level_gap(omega, std::ldexp(1.0, -N));
    if (!(t > 0.0) || 1.0 - t == 1.0) {
      seq.warnings.push_back("level " + std::to_string(N) + " skipped: r_N is not representable");
      break;
    }
    // r^{2K} < 1/2  <=>  2K * (-log(1 - t)) > log 2
    const double L = -std::log1p(-t);
    const double est = std::ceil(ln2 / (2.0 * L));
    if (!(est < 1e18)) {
      seq.warnings.push_back("level " + std::to_string(N) + " skipped: K(N) overflows");
      break;
    }
    auto K = static_cast<std::size_t>(std::max(1.0, est));
    while (2.0 * static_cast<double>(K) * L <= ln2) ++K;
    while (K > 1 && 2.0 * static_cast<double>(K - 1) * L > ln2) --K;
    if (!seq.levels.empty()) K = std::max(K, prev_K + 1);
    prev_K = K;
    seq.levels.push_back({N, 1.0 - t, t, K});
  }
  for (const auto& lv : seq.levels) {
    const double a = std::ldexp(1.0, lv.N);
    for (std::size_t n = lv.K; n <= n_max; ++n) seq.alpha[n] = a;
  }
  return seq;
}

inline constexpr std::size_t omega_grid_cap = 2048;

/// Boundary-grid lower estimate of ||f||_omega: max |f| plus the largest difference quotient over grid pairs.
inline double omega_norm_estimate(const PowerSeries& f, const ModulusOfContinuity& omega, std::size_t grid_n) {
  detail::require_param(grid_n >= 2, "omega_norm_estimate: grid must have at least 2 points");
  const std::size_t n = std::min(grid_n, omega_grid_cap);
  std::vector<cplx> vals(n);
  double sup = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    vals[j] = f(std::polar(1.0, two_pi * static_cast<double>(j) / static_cast<double>(n)));
    sup = std::max(sup, std::abs(vals[j]));
  }
  // chord length depends only on the index offset
  std::vector<double> inv(n, 0.0);
  for (std::size_t d = 1; d < n; ++d)
    inv[d] = 1.0 / omega(2.0 * std::sin(0.5 * two_pi * static_cast<double>(d) / static_cast<double>(n)));
  double q = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) q = std::max(q, std::abs(vals[i] - vals[j]) * inv[j - i]);
  return sup + q;
}

struct OmegaNormRefinement {
  double estimate;
  std::size_t grid_n;
  bool stabilized;
};

/// Doubles the grid until two successive doublings change the estimate by at most 1%.
inline OmegaNormRefinement omega_norm_refined(const PowerSeries& f, const ModulusOfContinuity& omega,
                                              std::size_t start = 64) {
  std::size_t n = std::max<std::size_t>(start, 2);
  double prev = omega_norm_estimate(f, omega, n);
  int calm = 0;
  while (n < omega_grid_cap) {
    n = std::min(2 * n, omega_grid_cap);
    const double cur = omega_norm_estimate(f, omega, n);
    calm = std::abs(cur - prev) <= 0.01 * std::abs(cur) ? calm + 1 : 0;
    prev = cur;
    if (calm >= 2) return {cur, n, true};
  }
  return {prev, n, false};
}

struct EmbeddingCheck {
  double lhs;
  double rhs;
  double norm_estimate;
  std::size_t grid_n;
  bool ok;
};

inline EmbeddingCheck verify_embedding(const PowerSeries& f, const ModulusOfContinuity& omega,
                                       const EmbeddingSequence& seq) {
  detail::require_param(f.degree() < seq.alpha.size(), "verify_embedding: degree exceeds the sequence length");
  const auto c = f.coefficients();
  double lhs = 0.0;
  for (std::size_t n = 0; n < c.size(); ++n) lhs += seq.alpha[n] * std::norm(c[n]);
  const auto est = omega_norm_refined(f, omega);
  const double rhs = seq.constant * est.estimate * est.estimate;
  return {lhs, rhs, est.estimate, est.grid_n, lhs <= rhs};
}

}  // namespace cyc
