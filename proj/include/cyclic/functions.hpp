#pragma once

// Inner and outer functions on the unit disk: evaluation from measure / zero /
// boundary data, Taylor coefficients, and minimum-modulus envelopes.

#include <cmath>
#include <complex>
#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "cyclic/errors.hpp"
#include "cyclic/fft.hpp"
#include "cyclic/power_series.hpp"

namespace cyc {

/// A point e^{i angle} of the unit circle, angle normalized to [0, 2 pi).
class CirclePoint {
 public:
  CirclePoint() = default;
  explicit CirclePoint(double angle) : angle_(normalize(angle)) {}

  double angle() const { return angle_; }
  cplx point() const { return std::polar(1.0, angle_); }

  static double normalize(double a) {
    if (!std::isfinite(a)) throw validation_error("CirclePoint: non-finite angle");
    double r = std::fmod(a, two_pi);
    if (r < 0.0) r += two_pi;
    if (r >= two_pi) r = 0.0;
    return r;
  }

 private:
  double angle_ = 0.0;
};

struct Atom {
  CirclePoint position;
  double mass = 0.0;
};

/// 2^depth equal atoms at the centers of the level-depth middle-thirds intervals of an arc.
struct CantorComponent {
  static constexpr int default_depth = 12;

  CirclePoint center;
  double arc_width = 0.0;
  int depth = default_depth;
  double total_mass = 0.0;
};

/**
 * @brief Positive finite measure on the circle: point masses plus Cantor-type pieces.
 *
 * Cantor pieces are expanded once, at construction, into their atomic
 * approximation; every evaluation sums over that expanded list.
 */
class SingularMeasure {
 public:
  struct ExpandedAtom {
    double angle;
    cplx zeta;
    double mass;
  };

  SingularMeasure(std::vector<Atom> atoms, std::vector<CantorComponent> cantor = {})
      : atoms_(std::move(atoms)), cantor_(std::move(cantor)) {
    for (const auto& a : atoms_)
      detail::require(a.mass > 0.0 && std::isfinite(a.mass), "SingularMeasure: atom masses must be positive");
    for (const auto& c : cantor_) {
      detail::require(c.total_mass > 0.0 && std::isfinite(c.total_mass),
                      "SingularMeasure: cantor mass must be positive");
      detail::require(c.arc_width > 0.0 && c.arc_width <= two_pi,
                      "SingularMeasure: cantor arc width must lie in (0, 2 pi]");
      detail::require(c.depth >= 1 && c.depth <= 24, "SingularMeasure: cantor depth must lie in [1, 24]");
    }
    expand();
    detail::require(total_ > 0.0, "SingularMeasure: total mass must be positive");
  }

  static SingularMeasure atom(double angle, double mass) {
    return SingularMeasure({Atom{CirclePoint(angle), mass}});
  }

  const std::vector<Atom>& atoms() const { return atoms_; }
  const std::vector<CantorComponent>& cantor_components() const { return cantor_; }
  const std::vector<ExpandedAtom>& expanded() const { return expanded_; }
  double total_mass() const { return total_; }

  /// Same shape with every mass multiplied by s > 0.
  SingularMeasure scaled(double s) const {
    detail::require(s > 0.0, "SingularMeasure::scaled: factor must be positive");
    auto atoms = atoms_;
    for (auto& a : atoms) a.mass *= s;
    auto cantor = cantor_;
    for (auto& c : cantor) c.total_mass *= s;
    return SingularMeasure(std::move(atoms), std::move(cantor));
  }

 private:
  void expand() {
    total_ = 0.0;
    for (const auto& a : atoms_) {
      expanded_.push_back({a.position.angle(), a.position.point(), a.mass});
      total_ += a.mass;
    }
    for (const auto& c : cantor_) {
      const std::size_t count = std::size_t{1} << c.depth;
      const double piece = c.total_mass / static_cast<double>(count);
      const double left = c.center.angle() - 0.5 * c.arc_width;
      const double width = c.arc_width / std::pow(3.0, c.depth);
      for (std::size_t i = 0; i < count; ++i) {
        // bit l of i (from the top) picks the left or right third at level l+1
        double offset = 0.0;
        double scale = c.arc_width;
        for (int l = c.depth - 1; l >= 0; --l) {
          scale /= 3.0;
          if ((i >> l) & 1U) offset += 2.0 * scale;
        }
        const double ang = CirclePoint::normalize(left + offset + 0.5 * width);
        expanded_.push_back({ang, std::polar(1.0, ang), piece});
      }
      total_ += c.total_mass;
    }
  }

  std::vector<Atom> atoms_;
  std::vector<CantorComponent> cantor_;
  std::vector<ExpandedAtom> expanded_;
  double total_ = 0.0;
};

/// Finitely many zeros 0 < |alpha| < 1.
class BlaschkeZeros {
 public:
  BlaschkeZeros() = default;
  explicit BlaschkeZeros(std::vector<cplx> zeros) : zeros_(std::move(zeros)) {
    for (const auto& a : zeros_) {
      const double m = std::abs(a);
      detail::require(m > 0.0 && m < 1.0, "BlaschkeZeros: zeros must satisfy 0 < |alpha| < 1");
    }
  }
  const std::vector<cplx>& zeros() const { return zeros_; }
  bool empty() const { return zeros_.empty(); }

 private:
  std::vector<cplx> zeros_;
};

/// Blaschke part times singular part; at least one of them nontrivial.
struct InnerFunctionSpec {
  InnerFunctionSpec(BlaschkeZeros z, std::optional<SingularMeasure> s) : zeros(std::move(z)), singular(std::move(s)) {
    detail::require(!zeros.empty() || singular.has_value(), "InnerFunctionSpec: both parts empty");
  }
  explicit InnerFunctionSpec(SingularMeasure s) : InnerFunctionSpec(BlaschkeZeros{}, std::move(s)) {}

  BlaschkeZeros zeros;
  std::optional<SingularMeasure> singular;
};

/// Piecewise-constant log|g| on [0, 2 pi): value i holds on [breakpoints[i], breakpoints[i+1]).
class BoundaryLogModulus {
 public:
  BoundaryLogModulus(std::vector<double> breakpoints, std::vector<double> values)
      : breakpoints_(std::move(breakpoints)), values_(std::move(values)) {
    detail::require(!breakpoints_.empty() && breakpoints_.size() == values_.size(),
                    "BoundaryLogModulus: need one value per breakpoint");
    detail::require(breakpoints_.front() == 0.0, "BoundaryLogModulus: first breakpoint must be 0");
    for (std::size_t i = 1; i < breakpoints_.size(); ++i)
      detail::require(breakpoints_[i] > breakpoints_[i - 1] && breakpoints_[i] < two_pi,
                      "BoundaryLogModulus: breakpoints must increase within [0, 2 pi)");
    for (double v : values_) detail::require(std::isfinite(v), "BoundaryLogModulus: values must be finite");
  }

  static BoundaryLogModulus constant(double v) { return BoundaryLogModulus({0.0}, {v}); }

  std::size_t pieces() const { return values_.size(); }
  double start(std::size_t i) const { return breakpoints_[i]; }
  double end(std::size_t i) const { return i + 1 < breakpoints_.size() ? breakpoints_[i + 1] : two_pi; }
  double value(std::size_t i) const { return values_[i]; }

 private:
  std::vector<double> breakpoints_;
  std::vector<double> values_;
};

namespace detail {

inline void require_in_disk(cplx z, const char* op) {
  if (!(std::abs(z) < 1.0)) throw domain_error(std::string(op) + ": point must satisfy |z| < 1");
}

}  // namespace detail

/// Herglotz transform sum over atoms of m (zeta + z) / (zeta - z).
inline cplx eval_herglotz(const SingularMeasure& measure, cplx z) {
  detail::require_in_disk(z, "eval_herglotz");
  cplx acc{0.0, 0.0};
  for (const auto& a : measure.expanded()) acc += a.mass * (a.zeta + z) / (a.zeta - z);
  return acc;
}

inline cplx eval_singular_inner(const SingularMeasure& measure, cplx z) {
  detail::require_in_disk(z, "eval_singular_inner");
  return std::exp(-eval_herglotz(measure, z));
}

/// Finite Blaschke product with the normalization (conj(a)/|a|) (z - a) / (1 - conj(a) z).
inline cplx eval_blaschke(const BlaschkeZeros& zeros, cplx z) {
  detail::require_in_disk(z, "eval_blaschke");
  cplx acc{1.0, 0.0};
  for (const auto& a : zeros.zeros()) acc *= (std::conj(a) / std::abs(a)) * (z - a) / (1.0 - std::conj(a) * z);
  return acc;
}

inline cplx eval_inner(const InnerFunctionSpec& spec, cplx z) {
  detail::require_in_disk(z, "eval_inner");
  cplx v = eval_blaschke(spec.zeros, z);
  if (spec.singular) v *= eval_singular_inner(*spec.singular, z);
  return v;
}

/**
 * @brief Outer function exp(int (zeta+z)/(zeta-z) log|g| dm) for piecewise-constant data.
 *
 * Composite trapezoid on each constant piece, the quadrature budget split in
 * proportion to piece length (at least two panels per piece).
 */
inline cplx eval_outer(const BoundaryLogModulus& data, cplx z, std::size_t quadrature_points = 1024) {
  detail::require_in_disk(z, "eval_outer");
  detail::require_param(quadrature_points >= 64, "eval_outer: quadrature_points must be >= 64");
  cplx integral{0.0, 0.0};
  for (std::size_t p = 0; p < data.pieces(); ++p) {
    const double a = data.start(p);
    const double b = data.end(p);
    const auto panels = std::max<std::size_t>(
        2, static_cast<std::size_t>(std::llround(static_cast<double>(quadrature_points) * (b - a) / two_pi)));
    const double h = (b - a) / static_cast<double>(panels);
    auto kernel = [z](double t) {
      const cplx zeta = std::polar(1.0, t);
      return (zeta + z) / (zeta - z);
    };
    cplx sum = 0.5 * (kernel(a) + kernel(b));
    for (std::size_t j = 1; j < panels; ++j) sum += kernel(a + h * static_cast<double>(j));
    integral += data.value(p) * sum * h;
  }
  return std::exp(integral / two_pi);
}

struct EnvelopeResult {
  double value = 0.0;
  /// Blaschke zeros inside |z| <= r: value is then only the circle minimum.
  bool zeros_inside = false;
};

/// Minimum of |theta| over grid_n equispaced points of |z| = r (the point 0 when r = 0).
inline EnvelopeResult min_modulus_envelope(const InnerFunctionSpec& spec, double r, std::size_t grid_n = 4096) {
  if (!(r >= 0.0 && r < 1.0)) throw domain_error("min_modulus_envelope: radius must lie in [0, 1)");
  detail::require_param(grid_n >= 1, "min_modulus_envelope: grid_n must be positive");
  EnvelopeResult out;
  for (const auto& a : spec.zeros.zeros())
    if (std::abs(a) <= r) out.zeros_inside = true;
  if (r == 0.0) {
    out.value = std::abs(eval_inner(spec, cplx{0.0, 0.0}));
    return out;
  }
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t j = 0; j < grid_n; ++j) {
    const cplx z = std::polar(r, two_pi * static_cast<double>(j) / static_cast<double>(grid_n));
    best = std::min(best, std::abs(eval_inner(spec, z)));
  }
  out.value = best;
  return out;
}

/// u_0 = nu(T), u_k = 2 sum_j m_j e^{-i k theta_j}: Taylor coefficients of the Herglotz transform.
inline std::vector<cplx> herglotz_coefficients(const SingularMeasure& measure, std::size_t max_degree) {
  std::vector<cplx> u(max_degree + 1, cplx{0.0, 0.0});
  u[0] = measure.total_mass();
  for (const auto& a : measure.expanded()) {
    for (std::size_t k = 1; k <= max_degree; ++k)
      u[k] += 2.0 * a.mass * std::polar(1.0, -static_cast<double>(k) * a.angle);
  }
  return u;
}

/// Taylor coefficients c_0..c_K of exp(-Herglotz transform) by series exponentiation.
inline PowerSeries taylor_singular_inner(const SingularMeasure& measure, std::size_t max_degree) {
  auto u = herglotz_coefficients(measure, max_degree);
  for (auto& x : u) x = -x;
  return PowerSeries(exp_series(u, max_degree));
}

struct FftTaylorResult {
  PowerSeries series;
  /// Bound on |aliasing| per coefficient, present when a certification was supplied.
  std::optional<double> aliasing_bound;
};

/**
 * @brief Taylor coefficients from N samples on |z| = rho:
 * c_k = rho^{-k} (1/N) sum_j f(rho w^j) w^{-jk}, w = e^{2 pi i / N}.
 *
 * Kept as an independent cross-check of taylor_singular_inner; the rho^{-k}
 * factor makes it ill-conditioned for large k near rho = 1.
 */
inline FftTaylorResult taylor_via_fft(const std::function<cplx(cplx)>& f, double rho, std::size_t max_degree,
                                      std::size_t samples, std::optional<Certification> cert = std::nullopt) {
  detail::require_param(rho > 0.0 && rho <= 1.0, "taylor_via_fft: rho must lie in (0, 1]");
  detail::require_param(samples >= 4 * max_degree && samples >= 1, "taylor_via_fft: need samples >= 4K");
  detail::require_param((samples & (samples - 1)) == 0, "taylor_via_fft: samples must be a power of two");
  std::vector<cplx> vals(samples);
  for (std::size_t j = 0; j < samples; ++j)
    vals[j] = f(std::polar(rho, two_pi * static_cast<double>(j) / static_cast<double>(samples)));
  const auto dft = detail::forward_dft(vals);
  std::vector<cplx> c(max_degree + 1);
  double rpow = 1.0;
  for (std::size_t k = 0; k <= max_degree; ++k) {
    c[k] = dft[k] / (static_cast<double>(samples) * rpow);
    rpow *= rho;
  }
  FftTaylorResult out{PowerSeries(std::move(c)), std::nullopt};
  if (cert && cert->radius > rho) {
    const double q = std::pow(rho / cert->radius, static_cast<double>(samples));
    out.aliasing_bound = cert->sup_bound * q / (1.0 - q);
  }
  return out;
}

}  // namespace cyc
