#pragma once

// Polynomials p_n with theta p_n -> 1 pointwise while |theta p_n| w stays
// below 2: Q_n(z) = 1/theta(r_n z), r_n = 1 - 1/n, truncated with a
// certified sup-error of at most 1/n on the closed disk.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <functional>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include "cyclic/errors.hpp"
#include "cyclic/functions.hpp"
#include "cyclic/growth_weight.hpp"
#include "cyclic/power_series.hpp"

namespace cyc {

/// {1 - 2^{-j} : j = 1, 2, ...} intersected with (0, r_max].
inline std::vector<double> geometric_radii(double r_max) {
  std::vector<double> out;
  for (int j = 1; j <= 60; ++j) {
    const double r = 1.0 - std::ldexp(1.0, -j);
    if (r > r_max) break;
    out.push_back(r);
  }
  return out;
}

/// Default scaling/verification cut-off 1 - 2^{-10}.
inline const double default_r_max = 1.0 - std::ldexp(1.0, -10);

/// Verification radii 1 - 2^{-12 (i+1)/count}, i = 0..count-1, clustered towards the circle.
inline std::vector<double> verification_radii(std::size_t count = 64) {
  std::vector<double> out(count);
  for (std::size_t i = 0; i < count; ++i)
    out[i] = 1.0 - std::exp2(-12.0 * static_cast<double>(i + 1) / static_cast<double>(count));
  return out;
}

inline constexpr std::size_t default_verification_angles = 1024;
inline constexpr std::size_t default_envelope_angles = 4096;
/// Relative slack for ties between an envelope and a weight that coincide in exact arithmetic.
inline constexpr double domination_rel_tol = 1e-12;

struct DominationReport {
  bool ok = true;
  std::vector<double> radii;
  std::vector<double> envelope;
  std::vector<double> weight;
  std::vector<double> margin;
};

/// ok iff min_{|z| = r} |theta| >= w(r) at every radius of the grid.
inline DominationReport envelope_dominates(const SingularMeasure& measure, const GrowthWeight& w,
                                           const std::vector<double>& radii,
                                           std::size_t angles = default_envelope_angles) {
  DominationReport rep;
  const InnerFunctionSpec spec(measure);
  for (double r : radii) {
    detail::require_param(r > 0.0 && r < 1.0, "envelope_dominates: radii must lie in (0, 1)");
    const double env = min_modulus_envelope(spec, r, angles).value;
    const double wr = w(r);
    rep.radii.push_back(r);
    rep.envelope.push_back(env);
    rep.weight.push_back(wr);
    rep.margin.push_back(env - wr);
    if (env < wr * (1.0 - domination_rel_tol)) rep.ok = false;
  }
  return rep;
}

struct ScaledMeasure {
  SingularMeasure measure;
  double scale;
};

/**
 * @brief Largest s in {1, 1/2, ..., 2^{-40}} such that s * shape dominates w on
 * the geometric grid up to r_max.
 *
 * |theta(z)| >= exp(-nu(T)(1+r)/(1-r)) is tried first; the sampled envelope is
 * only computed when that a-priori bound is not enough.
 */
inline ScaledMeasure scale_mass_to_dominate(const SingularMeasure& shape, const GrowthWeight& w,
                                            double r_max = default_r_max,
                                            std::size_t angles = default_envelope_angles) {
  detail::require_param(r_max > 0.0 && r_max < 1.0, "scale_mass_to_dominate: r_max must lie in (0, 1)");
  const auto radii = geometric_radii(r_max);
  for (int k = 0; k <= 40; ++k) {
    const double s = std::ldexp(1.0, -k);
    const double mass = s * shape.total_mass();
    bool apriori = true;
    for (double r : radii) {
      if (std::exp(-mass * (1.0 + r) / (1.0 - r)) < w(r) * (1.0 - domination_rel_tol)) {
        apriori = false;
        break;
      }
    }
    auto scaled = shape.scaled(s);
    if (apriori || envelope_dominates(scaled, w, radii, angles).ok) return {std::move(scaled), s};
  }
  throw construction_failed("scale_mass_to_dominate: no scale down to 2^-40 dominates the weight");
}

/// r_n = 1 - 1/n, certification radius R_n = (1 + 1/r_n)/2 and M = exp(nu(T)(1 + r_n R_n)/(1 - r_n R_n)).
inline Certification dilation_certification(const SingularMeasure& measure, int n) {
  detail::require_param(n >= 2, "dilation_certification: n must be >= 2");
  const double r = 1.0 - 1.0 / static_cast<double>(n);
  const double R = 0.5 * (1.0 + 1.0 / r);
  const double rho = r * R;
  return {R, std::exp(measure.total_mass() * (1.0 + rho) / (1.0 - rho))};
}

/// Coefficients of Q_n(z) = 1/theta(r_n z) = exp(u(r_n z)), with certification attached.
inline PowerSeries reciprocal_dilation_series(const SingularMeasure& measure, int n, std::size_t max_degree) {
  detail::require_param(n >= 2, "reciprocal_dilation_series: n must be >= 2");
  const double r = 1.0 - 1.0 / static_cast<double>(n);
  auto v = herglotz_coefficients(measure, max_degree);
  double rk = 1.0;
  for (auto& x : v) {
    x *= rk;
    rk *= r;
  }
  return PowerSeries(exp_series(v, max_degree), dilation_certification(measure, n));
}

inline constexpr std::size_t truncation_degree_cap = 1'000'000;

/// Cauchy tail bound M R^{-(D+1)} / (1 - 1/R) of a truncation at degree D.
inline double cauchy_tail(const Certification& c, std::size_t D) {
  return c.sup_bound * std::pow(c.radius, -static_cast<double>(D + 1)) / (1.0 - 1.0 / c.radius);
}

/// Smallest D whose Cauchy tail is <= eps.
inline std::size_t certified_degree(const Certification& c, double eps) {
  detail::require_param(c.radius > 1.0, "certified_degree: radius must exceed 1");
  detail::require_param(eps > 0.0, "certified_degree: eps must be positive");
  if (c.sup_bound == 0.0) return 0;
  const double logR = std::log(c.radius);
  const double est = (std::log(c.sup_bound) - std::log1p(-1.0 / c.radius) - std::log(eps)) / logR - 1.0;
  if (!(est < static_cast<double>(truncation_degree_cap)))
    throw truncation_infeasible("certified_degree: required degree exceeds the cap");
  auto D = static_cast<std::size_t>(std::max(0.0, std::floor(est)));
  while (D > 0 && cauchy_tail(c, D - 1) <= eps) --D;
  while (cauchy_tail(c, D) > eps) {
    if (++D > truncation_degree_cap) throw truncation_infeasible("certified_degree: required degree exceeds the cap");
  }
  return D;
}

/// Coefficients up to a requested degree, with an estimate of their accumulated rounding error
/// measured as a sup-norm on the unit circle.
struct SeriesSample {
  std::vector<cplx> coefficients;
  double rounding_estimate = 0.0;
};

struct CertifiedPolynomial {
  PowerSeries poly;
  double tail_bound = 0.0;
  double rounding_estimate = 0.0;
  /// tail_bound + rounding_estimate, a bound on sup_{|z|<=1} |Q - p|.
  double sup_error = 0.0;
};

/**
 * @brief Taylor truncation at the smallest degree whose Cauchy tail meets eps.
 *
 * If the source reports rounding noise that pushes the total above eps, the
 * tail target is tightened once by that amount; when that is impossible the
 * truncation is infeasible in double precision.
 */
inline CertifiedPolynomial certified_truncation(const std::function<SeriesSample(std::size_t)>& source,
                                                const Certification& cert, double eps) {
  std::size_t D = certified_degree(cert, eps);
  auto sample = source(D);
  double tail = cauchy_tail(cert, D);
  if (tail + sample.rounding_estimate > eps) {
    const double tighter = eps - sample.rounding_estimate;
    if (!(tighter > 0.0))
      throw truncation_infeasible("certified_truncation: rounding noise exceeds the error target");
    D = certified_degree(cert, tighter);
    sample = source(D);
    tail = cauchy_tail(cert, D);
    if (tail + sample.rounding_estimate > eps)
      throw truncation_infeasible("certified_truncation: rounding noise exceeds the error target");
  }
  sample.coefficients.resize(D + 1, cplx{0.0, 0.0});
  CertifiedPolynomial out;
  out.poly = PowerSeries(std::move(sample.coefficients));
  out.tail_bound = tail;
  out.rounding_estimate = sample.rounding_estimate;
  out.sup_error = tail + sample.rounding_estimate;
  return out;
}

/// Coefficient source for Q_n: exact recurrence plus a majorant-based rounding estimate.
inline std::function<SeriesSample(std::size_t)> dilation_source(const SingularMeasure& measure, int n) {
  return [&measure, n](std::size_t D) {
    const double r = 1.0 - 1.0 / static_cast<double>(n);
    auto v = herglotz_coefficients(measure, D);
    std::vector<double> major(D + 1);
    double rk = 1.0;
    for (std::size_t k = 0; k <= D; ++k) {
      v[k] *= rk;
      major[k] = std::abs(v[k]);
      rk *= r;
    }
    SeriesSample s;
    s.coefficients = exp_series(v, D);
    const auto bound = exp_series_majorant(major, D);
    constexpr double unit = std::numeric_limits<double>::epsilon() / 2.0;
    double err = 0.0;
    for (std::size_t k = 0; k <= D; ++k) err += (2.0 * static_cast<double>(k) + 4.0) * unit * bound[k];
    s.rounding_estimate = err;
    return s;
  };
}

struct ApproximantEntry {
  int n = 0;
  double r_n = 0.0;
  PowerSeries p;
  double sup_error = 0.0;
  double tail_bound = 0.0;
  double rounding_estimate = 0.0;
};

struct ApproximantBundle {
  SingularMeasure measure;
  GrowthWeight weight;
  std::vector<ApproximantEntry> entries;
};

/// theta p_n -> 1 with sup_{|z|<=1} |Q_n - p_n| <= 1/n for each n in n_list.
inline ApproximantBundle build_approximants(const SingularMeasure& measure, const GrowthWeight& w,
                                            const std::vector<int>& n_list, double r_max = default_r_max,
                                            std::size_t angles = default_envelope_angles) {
  if (!envelope_dominates(measure, w, geometric_radii(r_max), angles).ok)
    throw construction_failed("build_approximants: measure does not dominate the growth weight");
  ApproximantBundle bundle{measure, w, {}};
  for (int n : n_list) {
    detail::require_param(n >= 2, "build_approximants: n must be >= 2");
    const auto cert = dilation_certification(bundle.measure, n);
    auto poly = certified_truncation(dilation_source(bundle.measure, n), cert, 1.0 / static_cast<double>(n));
    ApproximantEntry e;
    e.n = n;
    e.r_n = 1.0 - 1.0 / static_cast<double>(n);
    e.p = std::move(poly.poly);
    e.sup_error = poly.sup_error;
    e.tail_bound = poly.tail_bound;
    e.rounding_estimate = poly.rounding_estimate;
    bundle.entries.push_back(std::move(e));
  }
  return bundle;
}

/// max over |z| = 1 samples of |Q_n(z) - p_n(z)|, Q_n from the closed form.
inline double sampled_sup_error(const ApproximantEntry& e, const SingularMeasure& measure, std::size_t angles = 8192) {
  double best = 0.0;
  for (std::size_t j = 0; j < angles; ++j) {
    const cplx z = std::polar(1.0, two_pi * static_cast<double>(j) / static_cast<double>(angles));
    const cplx q = std::exp(eval_herglotz(measure, e.r_n * z));
    best = std::max(best, std::abs(q - e.p(z)));
  }
  return best;
}

struct GrowthReport {
  std::vector<int> n;
  /// max |theta(z) p_n(z)| w(|z|) over the grid, -inf for an empty grid.
  std::vector<double> max_value;
  std::size_t grid_points = 0;
};

inline GrowthReport verify_growth_bound(const ApproximantBundle& bundle, const std::vector<double>& radii,
                                        std::size_t angles = default_verification_angles) {
  GrowthReport rep;
  std::vector<cplx> zs;
  std::vector<cplx> thetas;
  std::vector<double> ws;
  for (double r : radii) {
    const double wr = bundle.weight(r);
    for (std::size_t j = 0; j < angles; ++j) {
      const cplx z = std::polar(r, two_pi * static_cast<double>(j) / static_cast<double>(angles));
      zs.push_back(z);
      thetas.push_back(eval_singular_inner(bundle.measure, z));
      ws.push_back(wr);
    }
  }
  rep.grid_points = zs.size();
  for (const auto& e : bundle.entries) {
    double best = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < zs.size(); ++i) best = std::max(best, std::abs(thetas[i] * e.p(zs[i])) * ws[i]);
    rep.n.push_back(e.n);
    rep.max_value.push_back(best);
  }
  return rep;
}

struct ConvergenceRow {
  cplx z;
  std::vector<int> n;
  std::vector<double> deviation;
  /// sup_error(n) + |theta(z)/theta(r_n z) - 1|
  std::vector<double> bound;
};

/// |theta(z) p_n(z) - 1| at each sample point for each bundle entry.
inline std::vector<ConvergenceRow> verify_pointwise_convergence(const ApproximantBundle& bundle,
                                                                const std::vector<cplx>& points) {
  std::vector<ConvergenceRow> rows;
  for (const auto& z : points) {
    ConvergenceRow row{z, {}, {}, {}};
    const cplx th = eval_singular_inner(bundle.measure, z);
    for (const auto& e : bundle.entries) {
      row.n.push_back(e.n);
      row.deviation.push_back(std::abs(th * e.p(z) - 1.0));
      row.bound.push_back(e.sup_error + std::abs(th / eval_singular_inner(bundle.measure, e.r_n * z) - 1.0));
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

/// Sample points used by default for pointwise convergence.
inline std::vector<cplx> default_convergence_points() {
  return {cplx{0.0, 0.0}, cplx{0.5, 0.0}, cplx{0.9, 0.0}, cplx{0.0, 0.5}};
}

struct MeasureWeightPair {
  SingularMeasure shape;
  GrowthWeight weight;
};

/// Atom of mass 1 at angle 0 against w(r) = min(1 - 1e-3, 1 - r).
inline MeasureWeightPair default_cyclic_pair() {
  return {SingularMeasure::atom(0.0, 1.0), GrowthWeight::power_log(1.0)};
}

}  // namespace cyc
