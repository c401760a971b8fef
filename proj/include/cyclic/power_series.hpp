#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <limits>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "cyclic/errors.hpp"

namespace cyc {

using cplx = std::complex<double>;

inline constexpr double two_pi = 6.283185307179586476925286766559;

/// The represented function is analytic on |z| <= radius with modulus <= sup_bound there.
struct Certification {
  double radius = 0.0;
  double sup_bound = 0.0;
};

/**
 * @brief Finite Taylor expansion c_0 + c_1 z + ... + c_D z^D.
 *
 * Optionally carries a Cauchy certification (radius R > 1, bound M) for the
 * analytic function the coefficients were taken from, which is what the
 * truncation routines use to bound the dropped tail on the closed disk.
 */
class PowerSeries {
 public:
  PowerSeries() : coeffs_(1, cplx{0.0, 0.0}) {}

  explicit PowerSeries(std::vector<cplx> coeffs,
                       std::optional<Certification> cert = std::nullopt)
      : coeffs_(std::move(coeffs)), cert_(cert) {
    if (coeffs_.empty()) coeffs_.push_back(cplx{0.0, 0.0});
    if (cert_) {
      detail::require(cert_->radius > 1.0, "PowerSeries: certification radius must exceed 1");
      detail::require(cert_->sup_bound >= 0.0, "PowerSeries: negative certification bound");
    }
  }

  static PowerSeries constant(cplx c) { return PowerSeries(std::vector<cplx>{c}); }

  static PowerSeries monomial(std::size_t k, cplx c = 1.0) {
    std::vector<cplx> v(k + 1, cplx{0.0, 0.0});
    v[k] = c;
    return PowerSeries(std::move(v));
  }

  std::size_t degree() const { return coeffs_.size() - 1; }
  std::size_t size() const { return coeffs_.size(); }
  std::span<const cplx> coefficients() const { return coeffs_; }
  const std::optional<Certification>& certification() const { return cert_; }

  /// Coefficient k, zero beyond the stored degree.
  cplx operator[](std::size_t k) const { return k < coeffs_.size() ? coeffs_[k] : cplx{0.0, 0.0}; }

  /// Horner evaluation of the stored polynomial.
  cplx operator()(cplx z) const {
    cplx acc{0.0, 0.0};
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * z + *it;
    return acc;
  }

  /// H^2 norm of the stored coefficients.
  double l2_norm() const {
    double s = 0.0;
    for (const auto& c : coeffs_) s += std::norm(c);
    return std::sqrt(s);
  }

  double l1_norm() const {
    double s = 0.0;
    for (const auto& c : coeffs_) s += std::abs(c);
    return s;
  }

  PowerSeries truncated(std::size_t max_degree) const {
    std::vector<cplx> v(coeffs_.begin(),
                        coeffs_.begin() + static_cast<std::ptrdiff_t>(std::min(max_degree + 1, coeffs_.size())));
    return PowerSeries(std::move(v), cert_);
  }

  /// Zero-pads (or truncates) to exactly max_degree + 1 coefficients.
  std::vector<cplx> padded(std::size_t max_degree) const {
    std::vector<cplx> v(max_degree + 1, cplx{0.0, 0.0});
    std::copy_n(coeffs_.begin(), std::min(coeffs_.size(), v.size()), v.begin());
    return v;
  }

 private:
  std::vector<cplx> coeffs_;
  std::optional<Certification> cert_;
};

/// Cauchy product of a and b, keeping coefficients of degree <= max_degree.
inline PowerSeries multiply(const PowerSeries& a, const PowerSeries& b, std::size_t max_degree) {
  const std::size_t deg = std::min(max_degree, a.degree() + b.degree());
  std::vector<cplx> out(deg + 1, cplx{0.0, 0.0});
  const auto ca = a.coefficients();
  const auto cb = b.coefficients();
  for (std::size_t i = 0; i < ca.size() && i <= deg; ++i) {
    if (ca[i] == cplx{0.0, 0.0}) continue;
    const std::size_t jmax = std::min(cb.size() - 1, deg - i);
    for (std::size_t j = 0; j <= jmax; ++j) out[i + j] += ca[i] * cb[j];
  }
  return PowerSeries(std::move(out));
}

inline PowerSeries multiply(const PowerSeries& a, const PowerSeries& b) {
  return multiply(a, b, a.degree() + b.degree());
}

inline PowerSeries operator-(const PowerSeries& a, const PowerSeries& b) {
  const std::size_t deg = std::max(a.degree(), b.degree());
  std::vector<cplx> out(deg + 1);
  for (std::size_t k = 0; k <= deg; ++k) out[k] = a[k] - b[k];
  return PowerSeries(std::move(out));
}

inline PowerSeries operator+(const PowerSeries& a, const PowerSeries& b) {
  const std::size_t deg = std::max(a.degree(), b.degree());
  std::vector<cplx> out(deg + 1);
  for (std::size_t k = 0; k <= deg; ++k) out[k] = a[k] + b[k];
  return PowerSeries(std::move(out));
}

/**
 * @brief Coefficients of exp(U) from the coefficients u_0..u_K of U.
 *
 * Uses h' = U' h, i.e. h_0 = e^{u_0}, h_k = (1/k) sum_{j=1..k} j u_j h_{k-j}.
 * Entries of u past its size are treated as zero.
 */
inline std::vector<cplx> exp_series(std::span<const cplx> u, std::size_t max_degree) {
  std::vector<cplx> h(max_degree + 1, cplx{0.0, 0.0});
  h[0] = std::exp(u.empty() ? cplx{0.0, 0.0} : u[0]);
  std::vector<cplx> ju(max_degree + 1, cplx{0.0, 0.0});
  for (std::size_t j = 1; j <= max_degree && j < u.size(); ++j) ju[j] = static_cast<double>(j) * u[j];
  for (std::size_t k = 1; k <= max_degree; ++k) {
    cplx acc{0.0, 0.0};
    const std::size_t jmax = std::min(k, u.size() == 0 ? std::size_t{0} : u.size() - 1);
    for (std::size_t j = 1; j <= jmax; ++j) acc += ju[j] * h[k - j];
    h[k] = acc / static_cast<double>(k);
  }
  return h;
}

/// Same recurrence on nonnegative reals; majorizes |h_k| when a_j >= |u_j|.
inline std::vector<double> exp_series_majorant(std::span<const double> a, std::size_t max_degree) {
  std::vector<double> h(max_degree + 1, 0.0);
  h[0] = std::exp(a.empty() ? 0.0 : a[0]);
  for (std::size_t k = 1; k <= max_degree; ++k) {
    double acc = 0.0;
    const std::size_t jmax = std::min(k, a.size() == 0 ? std::size_t{0} : a.size() - 1);
    for (std::size_t j = 1; j <= jmax; ++j) acc += static_cast<double>(j) * a[j] * h[k - j];
    h[k] = acc / static_cast<double>(k);
  }
  return h;
}

}  // namespace cyc
