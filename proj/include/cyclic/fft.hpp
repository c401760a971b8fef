#pragma once

#include <fftw3.h>

#include <complex>
#include <memory>
#include <span>
#include <vector>

namespace cyc::detail {

// Forward DFT X_k = sum_j x_j exp(-2 pi i j k / N), unnormalized.
// FFTW_ESTIMATE keeps the plan choice independent of timing, so output is reproducible.
inline std::vector<std::complex<double>> forward_dft(std::span<const std::complex<double>> x) {
  const int n = static_cast<int>(x.size());
  std::vector<std::complex<double>> in(x.begin(), x.end());
  std::vector<std::complex<double>> out(x.size());
  if (n == 0) return out;
  struct PlanDeleter {
    void operator()(fftw_plan_s* p) const { fftw_destroy_plan(p); }
  };
  std::unique_ptr<fftw_plan_s, PlanDeleter> plan(
      fftw_plan_dft_1d(n, reinterpret_cast<fftw_complex*>(in.data()),
                       reinterpret_cast<fftw_complex*>(out.data()), FFTW_FORWARD, FFTW_ESTIMATE));
  fftw_execute(plan.get());
  return out;
}

}  // namespace cyc::detail
