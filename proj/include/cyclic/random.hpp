#pragma once

#include <complex>
#include <cstdint>
#include <random>
#include <vector>

#include "cyclic/power_series.hpp"

namespace cyc {

/// 64-bit LCG, multiplier 6364136223846793005, increment 1442695040888963407, modulus 2^64.
using Lcg64 = std::linear_congruential_engine<std::uint64_t, 6364136223846793005ULL, 1442695040888963407ULL, 0ULL>;

/// Uniform double in [0, 1) from the top 53 bits.
inline double uniform01(Lcg64& g) { return static_cast<double>(g() >> 11) * 0x1.0p-53; }

inline double uniform(Lcg64& g, double lo, double hi) { return lo + (hi - lo) * uniform01(g); }

/// Coefficients with real and imaginary parts uniform in [-1, 1).
inline PowerSeries random_polynomial(Lcg64& g, std::size_t degree) {
  std::vector<cplx> c(degree + 1);
  for (auto& x : c) {
    const double re = uniform(g, -1.0, 1.0);
    x = cplx{re, uniform(g, -1.0, 1.0)};
  }
  return PowerSeries(std::move(c));
}

}  // namespace cyc
