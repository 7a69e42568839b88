#pragma once

#include <cmath>
#include <numbers>

// Cancellation-free building blocks for expressions that have a finite
// limit as the deformation goes to zero.

namespace pdm::detail {

/// log1p(y) / y, equal to 1 at y = 0.
inline double log1p_ratio(double y) {
  if (y == 0.0) return 1.0;
  return std::log1p(y) / y;
}

/// expm1(y) / y, equal to 1 at y = 0.
inline double expm1_ratio(double y) {
  if (y == 0.0) return 1.0;
  return std::expm1(y) / y;
}

/// ((1 + y) log1p(y) - y) / y^2, equal to 1/2 at y = 0.
inline double xlogx_remainder(double y) {
  if (std::abs(y) < 0.05) {
    // sum_{k>=2} (-1)^k y^(k-2) / (k (k-1))
    double sum = 0.0;
    double power = 1.0;
    for (int k = 2; k < 40; ++k) {
      const double term = power / (k * (k - 1.0));
      sum += (k % 2 == 0) ? term : -term;
      if (std::abs(term) < 1e-18 * std::abs(sum)) break;
      power *= y;
    }
    return sum;
  }
  return ((1.0 + y) * std::log1p(y) - y) / (y * y);
}

inline constexpr double pi = std::numbers::pi;

}  // namespace pdm::detail
