#pragma once

#include <cmath>
#include <cstdint>

namespace satcg {

// Counter-mode splitmix64. draw(seed, i) equals the i-th output of the
// canonical splitmix64 generator seeded with `seed`, but is a pure function
// of (seed, i): streams are reproducible, order-independent, and identical
// across platforms at the 64-bit integer level.
inline std::uint64_t splitmix64_finalize(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

inline std::uint64_t counter_draw(std::uint64_t seed, std::uint64_t index) {
  return splitmix64_finalize(seed + (index + 1) * 0x9E3779B97F4A7C15ull);
}

// Uniform in [0,1) from the top 53 bits of the draw.
inline double uniform01(std::uint64_t seed, std::uint64_t index) {
  return static_cast<double>(counter_draw(seed, index) >> 11) * 0x1.0p-53;
}

// Acklam's rational approximation to the standard normal quantile,
// |relative error| < 1.15e-9 over (0,1).
inline double inverse_normal_cdf(double p) {
  static constexpr double a[6] = {-3.969683028665376e+01, 2.209460984245205e+02,
                                  -2.759285104469687e+02, 1.383577518672690e+02,
                                  -3.066479806614716e+01, 2.506628277459239e+00};
  static constexpr double b[5] = {-5.447609879822406e+01, 1.615858368580409e+02,
                                  -1.556989798598866e+02, 6.680131188771972e+01,
                                  -1.328068155288572e+01};
  static constexpr double c[6] = {-7.784894002430293e-03, -3.223964580411365e-01,
                                  -2.400758277161838e+00, -2.549732539343734e+00,
                                  4.374664141464968e+00,  2.938163982698783e+00};
  static constexpr double d[4] = {7.784695709041462e-03, 3.224671290700398e-01,
                                  2.445134137142996e+00, 3.754408661907416e+00};
  constexpr double p_low = 0.02425;
  constexpr double p_high = 1.0 - p_low;

  if (p < p_low) {
    const double q = std::sqrt(-2.0 * std::log(p));
    return (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
           ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  }
  if (p <= p_high) {
    const double q = p - 0.5;
    const double r = q * q;
    return (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
           (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
  }
  const double q = std::sqrt(-2.0 * std::log(1.0 - p));
  return -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
         ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
}

// Standard normal draw indexed by (seed, index).
inline double normal_draw(std::uint64_t seed, std::uint64_t index) {
  double u = uniform01(seed, index);
  if (u <= 0.0) u = 0x1.0p-53;  // uniform01 can return exactly 0
  return inverse_normal_cdf(u);
}

}  // namespace satcg
