#pragma once

// Radial weights: the moment weight built from a decreasing sequence, its
// exact monomial moments, the step multiplier that keeps W * g integrable,
// and weighted Bergman norms of power series.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <span>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "cyclic/errors.hpp"
#include "cyclic/power_series.hpp"

namespace cyc {

/// Increasing unbounded positive sequence lambda_n, n >= 0.
class LambdaSequence {
 public:
  struct Power {
    double a;
  };
  struct Logarithmic {};
  struct Tabulated {
    std::vector<double> values;
  };
  using Family = std::variant<Power, Logarithmic, Tabulated>;

  explicit LambdaSequence(Family f) : family_(std::move(f)) {
    if (const auto* p = std::get_if<Power>(&family_)) {
      detail::require(p->a > 0.0 && std::isfinite(p->a), "LambdaSequence: Power exponent must be positive");
    } else if (const auto* t = std::get_if<Tabulated>(&family_)) {
      detail::require(t->values.size() >= 2, "LambdaSequence: tabulated sequence needs at least two values");
      detail::require(t->values.front() > 0.0, "LambdaSequence: values must be positive");
      for (std::size_t i = 1; i < t->values.size(); ++i)
        detail::require(t->values[i] > t->values[i - 1], "LambdaSequence: tabulated values must increase");
    }
  }

  static LambdaSequence power(double a) { return LambdaSequence(Power{a}); }
  static LambdaSequence logarithmic() { return LambdaSequence(Logarithmic{}); }

  const Family& family() const { return family_; }
  bool is_named() const { return !std::holds_alternative<Tabulated>(family_); }

  /// Largest index with a defined value (unbounded for named families).
  std::size_t max_index() const {
    if (const auto* t = std::get_if<Tabulated>(&family_)) return t->values.size() - 1;
    return std::numeric_limits<std::size_t>::max();
  }

  double operator()(std::size_t n) const {
    const double x = static_cast<double>(n);
    if (const auto* p = std::get_if<Power>(&family_)) return std::pow(x + 1.0, p->a);
    if (std::holds_alternative<Logarithmic>(family_)) return std::log(x + 2.0);
    const auto& t = std::get<Tabulated>(family_);
    if (n >= t.values.size()) throw parameter_error("LambdaSequence: index beyond tabulated range");
    return t.values[n];
  }

  /// 1/lambda_0, ..., 1/lambda_{count-1}.
  std::vector<double> reciprocals(std::size_t count) const {
    std::vector<double> mu(count);
    for (std::size_t n = 0; n < count; ++n) mu[n] = 1.0 / (*this)(n);
    return mu;
  }

 private:
  Family family_;
};

/**
 * @brief Nonnegative piecewise-constant function on [0, 1).
 *
 * values[m] holds on [breakpoints[m], breakpoints[m+1]); the function is zero
 * on [breakpoints.back(), 1). Distances to 1 are kept alongside the
 * breakpoints so integrals near x = 1 do not lose digits.
 */
/// n_max of the construction that produced a weight, and the guarantee lost by stopping there.
struct WeightTruncation {
  std::size_t n_max = 0;
  double residual = 0.0;
};

class RadialWeight {
 public:
  using Truncation = WeightTruncation;

  RadialWeight(std::vector<double> breakpoints, std::vector<double> values, Truncation trunc = {})
      : breaks_(std::move(breakpoints)), values_(std::move(values)), trunc_(trunc) {
    detail::require(breaks_.size() >= 2 && values_.size() + 1 == breaks_.size(),
                    "RadialWeight: need M+1 breakpoints for M values");
    detail::require(breaks_.front() == 0.0, "RadialWeight: first breakpoint must be 0");
    for (std::size_t m = 1; m < breaks_.size(); ++m)
      detail::require(breaks_[m] > breaks_[m - 1] && breaks_[m] <= 1.0,
                      "RadialWeight: breakpoints must increase within [0, 1]");
    for (double v : values_)
      detail::require(v >= 0.0 && std::isfinite(v), "RadialWeight: values must be finite and nonnegative");
    gaps_.resize(breaks_.size());
    for (std::size_t m = 0; m < breaks_.size(); ++m) gaps_[m] = 1.0 - breaks_[m];
  }

  RadialWeight(std::vector<double> breakpoints, std::vector<double> gaps, std::vector<double> values,
               Truncation trunc)
      : RadialWeight(std::move(breakpoints), std::move(values), trunc) {
    gaps_ = std::move(gaps);
  }

  static RadialWeight constant(double v) { return RadialWeight({0.0, 1.0}, {v}); }

  std::span<const double> breakpoints() const { return breaks_; }
  std::span<const double> values() const { return values_; }
  /// gaps()[m] == 1 - breakpoints()[m], carried exactly when known.
  std::span<const double> gaps() const { return gaps_; }
  std::size_t pieces() const { return values_.size(); }
  const Truncation& truncation() const { return trunc_; }

  double operator()(double x) const {
    if (x < 0.0 || x >= breaks_.back()) return 0.0;
    const auto it = std::upper_bound(breaks_.begin(), breaks_.end(), x);
    return values_[static_cast<std::size_t>(it - breaks_.begin()) - 1];
  }

  /// Integral of the weight over x in [1 - gap_hi, 1 - gap_lo].
  double integral_between_gaps(double gap_hi, double gap_lo) const {
    double s = 0.0;
    for (std::size_t m = 0; m < values_.size(); ++m) {
      const double hi = std::min(gap_hi, gaps_[m]);
      const double lo = std::max(gap_lo, gaps_[m + 1]);
      if (hi > lo) s += values_[m] * (hi - lo);
    }
    return s;
  }

  double total_integral() const { return integral_between_gaps(1.0, 0.0); }

 private:
  std::vector<double> breaks_;
  std::vector<double> values_;
  std::vector<double> gaps_;
  Truncation trunc_;
};

/// Smallest alpha_n = (1 - 1/n)^{2n+1} over n >= 2, attained at n = 2.
inline constexpr double moment_alpha = 1.0 / 32.0;

/**
 * @brief Integrable weight whose odd moments dominate a decreasing sequence mu.
 *
 * Lambda = sum_{n=2}^{n_max} c_n 1_{I_n}, I_n = [1 - 1/n, 1 - 1/(n+1)),
 * c_n = |I_n|^{-1} (mu~_n - mu~_{n+1}) / alpha with the shifted sequence
 * mu~_n = mu_{n-2}. Intervals start at n = 2 because (1 - 1/n)^{2n+1} vanishes
 * at n = 1; the shift restores mu_N <= int x^{2N+1} Lambda for every N >= 0,
 * up to the dropped tail mu~_{n_max+1} = mu_{n_max-1} recorded as the residual.
 */
inline RadialWeight moment_weight(std::span<const double> mu, std::size_t n_max) {
  detail::require_param(n_max >= 2, "moment_weight: n_max must be at least 2");
  detail::require(mu.size() >= n_max, "moment_weight: need mu_0 .. mu_{n_max-1}");
  for (std::size_t n = 0; n < n_max; ++n) {
    detail::require(mu[n] > 0.0 && std::isfinite(mu[n]), "moment_weight: sequence must be positive");
    if (n > 0) detail::require(mu[n] <= mu[n - 1], "moment_weight: sequence must be nonincreasing");
  }
  detail::require(mu[n_max - 1] < mu[0], "moment_weight: sequence must decrease towards 0");

  std::vector<double> breaks{0.0};
  std::vector<double> gaps{1.0};
  std::vector<double> values{0.0};
  for (std::size_t n = 2; n <= n_max; ++n) {
    const double nd = static_cast<double>(n);
    breaks.push_back(1.0 - 1.0 / nd);
    gaps.push_back(1.0 / nd);
    const double width = 1.0 / (nd * (nd + 1.0));
    values.push_back((mu[n - 2] - mu[n - 1]) / (moment_alpha * width));
  }
  const double last = static_cast<double>(n_max) + 1.0;
  breaks.push_back(1.0 - 1.0 / last);
  gaps.push_back(1.0 / last);
  return RadialWeight(std::move(breaks), std::move(gaps), std::move(values), {n_max, mu[n_max - 1]});
}

/// int_0^1 x^{2N+1} Lambda(x) dx in closed form.
inline double monomial_moment(const RadialWeight& w, std::size_t N) {
  const double p = 2.0 * static_cast<double>(N) + 2.0;
  const auto b = w.breakpoints();
  const auto v = w.values();
  double s = 0.0;
  for (std::size_t m = 0; m < v.size(); ++m) {
    if (v[m] == 0.0) continue;
    s += v[m] * (std::pow(b[m + 1], p) - std::pow(b[m], p));
  }
  return s / p;
}

inline std::vector<double> monomial_moments(const RadialWeight& w, std::size_t max_N) {
  std::vector<double> out(max_N + 1);
  for (std::size_t N = 0; N <= max_N; ++N) out[N] = monomial_moment(w, N);
  return out;
}

struct MomentRow {
  std::size_t N;
  double moment;
  double target;
  double margin;
};

struct MomentReport {
  std::vector<MomentRow> rows;
  double residual = 0.0;
  bool ok = true;
};

/// Checks moment_N >= mu_N - residual for N = 0..N_max.
inline MomentReport verify_moments(const RadialWeight& w, std::span<const double> mu, std::size_t N_max) {
  const auto& tr = w.truncation();
  if (tr.n_max != 0)
    detail::require_param(N_max + 2 <= tr.n_max, "verify_moments: N_max must be <= n_max - 2");
  detail::require_param(mu.size() > N_max, "verify_moments: mu too short");
  MomentReport rep;
  rep.residual = tr.residual;
  for (std::size_t N = 0; N <= N_max; ++N) {
    const double m = monomial_moment(w, N);
    rep.rows.push_back({N, m, mu[N], m - mu[N]});
    if (m - mu[N] < -rep.residual) rep.ok = false;
  }
  return rep;
}

/**
 * @brief Increasing step function: 1 below the first threshold, 2^n on [t_n, t_{n+1}),
 * 2^M from the last threshold to 1.
 *
 * Thresholds are stored as gaps 1 - t_n. When the weight it was built from
 * vanishes near 1, consecutive thresholds may coincide; such levels are empty.
 */
class StepMultiplier {
 public:
  explicit StepMultiplier(std::vector<double> gaps) : gaps_(std::move(gaps)) {
    detail::require(!gaps_.empty(), "StepMultiplier: need at least one level");
    detail::require(gaps_.size() <= 1000, "StepMultiplier: at most 1000 levels");
    for (std::size_t n = 0; n < gaps_.size(); ++n) {
      detail::require(gaps_[n] > 0.0 && gaps_[n] <= 1.0, "StepMultiplier: gaps must lie in (0, 1]");
      if (n > 0) detail::require(gaps_[n] <= gaps_[n - 1], "StepMultiplier: thresholds must not decrease");
    }
  }

  std::size_t levels() const { return gaps_.size(); }
  std::span<const double> gaps() const { return gaps_; }
  double threshold(std::size_t n) const { return 1.0 - gaps_.at(n - 1); }
  double gap(std::size_t n) const { return gaps_.at(n - 1); }
  static double level_value(std::size_t n) { return std::ldexp(1.0, static_cast<int>(n)); }

  /// Level index n with W = 2^n at x (0 below the first threshold).
  std::size_t level_at(double x) const {
    const double g = 1.0 - x;
    std::size_t n = 0;
    while (n < gaps_.size() && gaps_[n] >= g) ++n;
    return n;
  }

  double operator()(double x) const { return level_value(level_at(x)); }

 private:
  std::vector<double> gaps_;
};

/// Gap delta with int_{1-delta}^1 g = target and delta maximal (smallest abscissa).
inline double tail_gap(const RadialWeight& g, double target) {
  const auto gaps = g.gaps();
  const auto v = g.values();
  double tail = 0.0;
  for (std::size_t m = v.size(); m-- > 0;) {
    const double len = gaps[m] - gaps[m + 1];
    const double next = tail + v[m] * len;
    if (next > target) return gaps[m + 1] + (target - tail) / v[m];
    tail = next;
  }
  return 1.0;
}

/**
 * @brief Multiplier W with int_{t_n}^1 g <= 4^{-n}, so that int W g <= int g + 1.
 *
 * t_n is the smallest abscissa meeting the tail bound, found exactly on the
 * piecewise-constant g.
 */
inline StepMultiplier multiplier_weight(const RadialWeight& g, std::size_t levels) {
  detail::require_param(levels >= 1 && levels <= 1000, "multiplier_weight: levels must lie in [1, 1000]");
  detail::require(std::isfinite(g.total_integral()), "multiplier_weight: weight must be integrable");
  std::vector<double> gaps(levels);
  double prev = 1.0;
  for (std::size_t n = 1; n <= levels; ++n) {
    const double target = std::ldexp(1.0, -2 * static_cast<int>(n));
    double d = tail_gap(g, target);
    // the solved gap can land one ulp high; step down until the evaluated tail meets the target
    while (d > 0.0 && g.integral_between_gaps(d, 0.0) > target) d = std::nextafter(d, 0.0);
    d = std::min(d, prev);
    if (d <= 0.0) d = std::numeric_limits<double>::min();
    gaps[n - 1] = d;
    prev = d;
  }
  return StepMultiplier(std::move(gaps));
}

/// int_{t_n}^{t_{n+1}} W g for n = 0..M (n = 0 is [0, t_1), n = M runs to 1).
inline std::vector<double> multiplier_level_integrals(const StepMultiplier& W, const RadialWeight& g) {
  const std::size_t M = W.levels();
  std::vector<double> out(M + 1);
  double hi = 1.0;
  for (std::size_t n = 0; n <= M; ++n) {
    const double lo = n < M ? W.gap(n + 1) : 0.0;
    out[n] = StepMultiplier::level_value(n) * g.integral_between_gaps(hi, lo);
    hi = lo;
  }
  return out;
}

/// Exact int_0^1 W(x) g(x) dx.
inline double multiplier_integral(const StepMultiplier& W, const RadialWeight& g) {
  double s = 0.0;
  for (double x : multiplier_level_integrals(W, g)) s += x;
  return s;
}

/// int_D |f|^2 Lambda(|z|) dA for normalized area, via sum_k |f_k|^2 2 moment_k.
inline double weighted_bergman_norm_sq(const PowerSeries& f, const RadialWeight& w) {
  const auto c = f.coefficients();
  double s = 0.0;
  for (std::size_t k = 0; k < c.size(); ++k) {
    const double a = std::norm(c[k]);
    if (a != 0.0) s += a * 2.0 * monomial_moment(w, k);
  }
  return s;
}

inline double weighted_bergman_norm_sq(const PowerSeries& f, std::span<const double> moments) {
  const auto c = f.coefficients();
  detail::require_param(moments.size() >= c.size(), "weighted_bergman_norm_sq: not enough moments");
  double s = 0.0;
  for (std::size_t k = 0; k < c.size(); ++k) s += std::norm(c[k]) * 2.0 * moments[k];
  return s;
}

struct LambdanormCheck {
  double lhs = 0.0;
  double rhs = 0.0;
  bool ok = false;
};

/**
 * sum_k |f_k|^2 / lambda_k <= (1/2) int_D |f|^2 Lambda dA, valid for
 * deg f <= n_max - 2 when Lambda was built from mu = 1/lambda.
 */
inline LambdanormCheck verify_lambdanorm(const PowerSeries& f, const LambdaSequence& lambda, const RadialWeight& w) {
  const auto& tr = w.truncation();
  detail::require_param(tr.n_max >= 2 && f.degree() + 2 <= tr.n_max,
                        "verify_lambdanorm: degree exceeds the moment guarantee");
  LambdanormCheck out;
  const auto c = f.coefficients();
  for (std::size_t k = 0; k < c.size(); ++k) out.lhs += std::norm(c[k]) / lambda(k);
  out.rhs = 0.5 * weighted_bergman_norm_sq(f, w);
  out.ok = out.lhs <= out.rhs * (1.0 + 1e-12);
  return out;
}

}  // namespace cyc
