#pragma once

#include <cmath>
#include <complex>

#include "pdm/error.hpp"
#include "pdm/params.hpp"
#include "pdm/stable_math.hpp"

/// Closed forms for the V = 0 infinite well of width L in the deformed
/// formalism. Every expression is written through log1p(gamma L)/(gamma L)
/// so that gamma -> 0 is evaluated without cancellation and reproduces the
/// ordinary box.

namespace pdm {

/// Closed-form data for level n.
struct WellSolution {
  int n = 1;
  PhysicalParams params;
  double A_n_sq = 0.0;
  double k_n_sq = 0.0;
  double E_n = 0.0;
  double E_shifted = 0.0;
};

/// Coefficients of u^2 phi'' + a u phi' + b phi = 0, u = 1 + gamma x.
struct OdeCoefficients {
  double a = 0.0;
  double b = 0.0;
};

namespace detail {

inline void require_level(int n) { require(n >= 1, "quantum number n must be >= 1"); }

// ln(1 + gamma L) / (gamma L)
inline double log_ratio(const PhysicalParams& p) { return log1p_ratio(p.gamma * p.length); }

}  // namespace detail

/// Shift hbar^2 gamma^2 / 8m between E and E~.
inline double energy_shift_term(const PhysicalParams& p) {
  return p.hbar * p.hbar * p.gamma * p.gamma / (8.0 * p.mass);
}

/// a = 3 and b = 2m E~ / (hbar gamma)^2 with E~ = E + hbar^2 gamma^2 / 8m.
/// Undefined at gamma = 0.
inline OdeCoefficients ode_coefficients(const PhysicalParams& p, double energy) {
  p.validate();
  detail::require(p.gamma != 0.0, "ode_coefficients: the transformed ODE needs gamma != 0");
  const double e_tilde = energy + energy_shift_term(p);
  return {3.0, 2.0 * p.mass * e_tilde / (p.hbar * p.hbar * p.gamma * p.gamma)};
}

/// (1/u) exp(sign * i sqrt(k^2/gamma^2 - 1) ln u).
inline std::complex<double> general_solution(double u, double k_sq_over_gamma_sq, int sign) {
  detail::require(u > 0.0, "general_solution: u must be positive");
  detail::require(k_sq_over_gamma_sq > 1.0, "general_solution: requires k^2/gamma^2 > 1");
  detail::require(sign == 1 || sign == -1, "general_solution: sign must be +1 or -1");
  const double phase = sign * std::sqrt(k_sq_over_gamma_sq - 1.0) * std::log(u);
  return std::polar(1.0 / u, phase);
}

/// |A_n|^2 = 2/L + 2 gamma + (1 + gamma L) ln^2(1 + gamma L) / (2 n^2 pi^2 L).
inline double normalization_sq(int n, const PhysicalParams& p) {
  detail::require_level(n);
  p.validate();
  const double eps = p.gamma_tilde();
  const double lr = detail::log_ratio(p);
  const double nn = static_cast<double>(n);
  return 2.0 / p.length + 2.0 * p.gamma +
         (1.0 + eps) * eps * eps * lr * lr / (2.0 * nn * nn * detail::pi * detail::pi * p.length);
}

/// k_n^2 = gamma^2 (1 + n^2 pi^2 / ln^2(1 + gamma L)); n^2 pi^2 / L^2 at
/// gamma = 0.
inline double wavenumber_sq(int n, const PhysicalParams& p) {
  detail::require_level(n);
  p.validate();
  const double lr = detail::log_ratio(p);
  const double nn = static_cast<double>(n);
  const double q = nn * detail::pi / (p.length * lr);
  return p.gamma * p.gamma + q * q;
}

/// Lower bound 3 hbar^2 gamma^2 / 8m for square-integrable solutions.
inline double energy_bound(const PhysicalParams& p) {
  p.validate();
  return 3.0 * energy_shift_term(p);
}

/// E_n = n^2 pi^2 hbar^2 gamma^2 / (2 m ln^2(1 + gamma L)) + 3 hbar^2 gamma^2 / 8m.
inline double energy(int n, const PhysicalParams& p) {
  detail::require_level(n);
  p.validate();
  const double lr = detail::log_ratio(p);
  const double nn = static_cast<double>(n);
  const double q = nn * detail::pi * p.hbar / (p.length * lr);
  return q * q / (2.0 * p.mass) + energy_bound(p);
}

/// Spectrum of the non-Hermitian formulation: energy(n) without the
/// 3 hbar^2 gamma^2 / 8m offset.
inline double reference_energy_ref3(int n, const PhysicalParams& p) {
  detail::require_level(n);
  p.validate();
  const double lr = detail::log_ratio(p);
  const double nn = static_cast<double>(n);
  const double q = nn * detail::pi * p.hbar / (p.length * lr);
  return q * q / (2.0 * p.mass);
}

/// phi_n(x) = A_n / (1 + gamma x) sin(n pi ln(1 + gamma x) / ln(1 + gamma L))
/// on 0 < x < L, zero elsewhere; A_n > 0.
inline double eigenfunction(int n, double x, const PhysicalParams& p) {
  detail::require_level(n);
  p.validate();
  if (!(x > 0.0 && x < p.length)) return 0.0;
  const double ratio =
      x * detail::log1p_ratio(p.gamma * x) / (p.length * detail::log_ratio(p));
  const double amplitude = std::sqrt(normalization_sq(n, p));
  return amplitude / (1.0 + p.gamma * x) * std::sin(static_cast<double>(n) * detail::pi * ratio);
}

/// Bundles the closed forms for level n.
inline WellSolution well_solution(int n, const PhysicalParams& p) {
  WellSolution s;
  s.n = n;
  s.params = p;
  s.A_n_sq = normalization_sq(n, p);
  s.k_n_sq = wavenumber_sq(n, p);
  s.E_n = energy(n, p);
  s.E_shifted = s.E_n + energy_shift_term(p);
  return s;
}

}  // namespace pdm
