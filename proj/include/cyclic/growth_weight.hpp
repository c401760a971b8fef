#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <string>
#include <type_traits>
#include <utility>
#include <variant>
#include <vector>

#include "cyclic/errors.hpp"
#include "cyclic/weights.hpp"

namespace cyc {

/// Decreasing w : [0,1) -> (0,1) with w(r) -> 0 as r -> 1.
class GrowthWeight {
 public:
  /// w(r) = exp(-m (1+r)/(1-r)), the envelope of a single atom of mass m.
  struct ExponentialPoisson {
    double m;
  };
  /// w(r) = min(1 - eps, (1-r)^a), eps = 1e-3.
  struct PowerLog {
    double a;
  };
  /// Nonincreasing piecewise-linear interpolation through (breakpoints, values).
  struct Tabulated {
    std::vector<double> breakpoints;
    std::vector<double> values;
  };
  /// w = scale * W^{-1/2} for a step multiplier W >= 1.
  struct InverseSqrtMultiplier {
    StepMultiplier multiplier;
    double scale;
  };
  using Family = std::variant<ExponentialPoisson, PowerLog, Tabulated, InverseSqrtMultiplier>;

  static constexpr double power_log_eps = 1e-3;

  explicit GrowthWeight(Family f) : family_(std::move(f)) { validate(); }

  static GrowthWeight exponential_poisson(double m) { return GrowthWeight(ExponentialPoisson{m}); }
  static GrowthWeight power_log(double a) { return GrowthWeight(PowerLog{a}); }

  const Family& family() const { return family_; }

  double operator()(double r) const {
    if (!(r >= 0.0 && r < 1.0)) throw domain_error("GrowthWeight: radius must lie in [0, 1)");
    return std::visit([r](const auto& f) { return eval(f, r); }, family_);
  }

  std::string name() const {
    return std::visit(
        [](const auto& f) -> std::string {
          using T = std::decay_t<decltype(f)>;
          if constexpr (std::is_same_v<T, ExponentialPoisson>) return "exponential-poisson";
          else if constexpr (std::is_same_v<T, PowerLog>) return "power-log";
          else if constexpr (std::is_same_v<T, Tabulated>) return "tabulated";
          else return "inverse-sqrt-multiplier";
        },
        family_);
  }

 private:
  static double eval(const ExponentialPoisson& f, double r) { return std::exp(-f.m * (1.0 + r) / (1.0 - r)); }
  static double eval(const PowerLog& f, double r) {
    return std::min(1.0 - power_log_eps, std::pow(1.0 - r, f.a));
  }
  static double eval(const Tabulated& f, double r) {
    const auto& b = f.breakpoints;
    const auto it = std::upper_bound(b.begin(), b.end(), r);
    const auto i = static_cast<std::size_t>(it - b.begin());
    if (i >= b.size()) return f.values.back();
    const double t = (r - b[i - 1]) / (b[i] - b[i - 1]);
    return f.values[i - 1] + t * (f.values[i] - f.values[i - 1]);
  }
  static double eval(const InverseSqrtMultiplier& f, double r) {
    const auto n = f.multiplier.level_at(r);
    // W = 2^n, so W^{-1/2} = 2^{-n/2}
    return f.scale * std::exp2(-0.5 * static_cast<double>(n));
  }

  void validate() const {
    if (const auto* e = std::get_if<ExponentialPoisson>(&family_)) {
      detail::require(e->m > 0.0 && std::isfinite(e->m), "GrowthWeight: ExponentialPoisson needs m > 0");
    } else if (const auto* p = std::get_if<PowerLog>(&family_)) {
      detail::require(p->a > 0.0 && std::isfinite(p->a), "GrowthWeight: PowerLog needs a > 0");
    } else if (const auto* t = std::get_if<Tabulated>(&family_)) {
      const auto& b = t->breakpoints;
      const auto& v = t->values;
      detail::require(b.size() >= 2 && b.size() == v.size(), "GrowthWeight: tabulated needs matching arrays");
      detail::require(b.front() == 0.0 && b.back() == 1.0, "GrowthWeight: tabulated breakpoints must span [0, 1]");
      detail::require(v.back() == 0.0, "GrowthWeight: tabulated weight must reach 0 at r = 1");
      for (std::size_t i = 1; i < b.size(); ++i) {
        detail::require(b[i] > b[i - 1], "GrowthWeight: tabulated breakpoints must increase");
        detail::require(v[i] <= v[i - 1], "GrowthWeight: tabulated values must not increase");
      }
      for (std::size_t i = 0; i + 1 < v.size(); ++i)
        detail::require(v[i] > 0.0 && v[i] < 1.0, "GrowthWeight: tabulated values must lie in (0, 1)");
    } else {
      const auto& m = std::get<InverseSqrtMultiplier>(family_);
      detail::require(m.scale > 0.0 && m.scale < 1.0, "GrowthWeight: multiplier scale must lie in (0, 1)");
    }
  }

  Family family_;
};

/// Default scale for decay_weight: w = (2W)^{-1/2}, which stays below 1 where W = 1.
inline const double default_decay_scale = std::sqrt(0.5);

/**
 * @brief Decreasing weight w with int Lambda / w^2 < infinity.
 *
 * w = scale * W^{-1/2} where W = multiplier_weight(Lambda, levels), so that
 * int Lambda / w^2 = scale^{-2} int W Lambda is finite.
 */
inline GrowthWeight decay_weight(const RadialWeight& lambda_weight, std::size_t levels,
                                 double scale = default_decay_scale) {
  return GrowthWeight(GrowthWeight::InverseSqrtMultiplier{multiplier_weight(lambda_weight, levels), scale});
}

/// int_0^1 Lambda / w^2 computed exactly (only for multiplier-backed weights).
inline double inverse_square_integral(const GrowthWeight& w, const RadialWeight& lambda_weight) {
  const auto* m = std::get_if<GrowthWeight::InverseSqrtMultiplier>(&w.family());
  detail::require_param(m != nullptr, "inverse_square_integral: weight is not multiplier-backed");
  return multiplier_integral(m->multiplier, lambda_weight) / (m->scale * m->scale);
}

}  // namespace cyc
