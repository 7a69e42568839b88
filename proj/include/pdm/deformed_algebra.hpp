#pragma once

#include <cmath>

#include "pdm/error.hpp"
#include "pdm/stable_math.hpp"

/// Scalar algebra of the deformed translation group: the composition law
/// a (+) b = a + b + gamma a b, its q-exponential realisation, and the
/// coordinate s = ln(1 + gamma x) / gamma in which deformed translations
/// become ordinary shifts.

namespace pdm {

/// Deformation strength gamma (units of 1/length). Any finite value is
/// admitted here; physical domain restrictions live in PhysicalParams.
struct Deformation {
  double gamma = 0.0;
};

/// a (+) b = a + b + gamma a b. Commutative and associative, identity 0.
inline double deformed_add(double a, double b, Deformation d) {
  return a + b + d.gamma * (a * b);
}

/// Inverse element under deformed_add: -a / (1 + gamma a).
inline double deformed_inverse(double a, Deformation d) {
  detail::require(1.0 + d.gamma * a != 0.0, "deformed_inverse: 1 + gamma*a must be nonzero");
  return -a / (1.0 + d.gamma * a);
}

/// q-exponential [1 + (1 - q) x]^{1/(1-q)}, reducing to exp(x) at q = 1.
///
/// Evaluated as exp(x * log1p(y)/y) with y = (1 - q) x so the q -> 1 limit
/// is continuous. Throws ValidationError when 1 + (1 - q) x <= 0.
inline double q_exp(double x, double q) {
  const double y = (1.0 - q) * x;
  if (q != 1.0 && !(1.0 + y > 0.0)) {
    throw ValidationError("q_exp: requires 1 + (1 - q) x > 0");
  }
  return std::exp(x * detail::log1p_ratio(y));
}

/// Image of the point x under an infinitesimal deformed translation by dx:
/// x + dx (1 + gamma x).
inline double point_translate(double x, double dx, Deformation d) {
  return x + dx * (1.0 + d.gamma * x);
}

/// s = ln(1 + gamma x) / gamma (s = x at gamma = 0).
inline double deformed_coordinate(double x, Deformation d) {
  const double y = d.gamma * x;
  if (!(1.0 + y > 0.0)) {
    throw ValidationError("deformed_coordinate: requires 1 + gamma x > 0");
  }
  return x * detail::log1p_ratio(y);
}

/// Inverse of deformed_coordinate: x = (exp(gamma s) - 1) / gamma.
inline double physical_coordinate(double s, Deformation d) {
  return s * detail::expm1_ratio(d.gamma * s);
}

}  // namespace pdm
