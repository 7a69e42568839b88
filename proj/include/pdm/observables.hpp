#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <utility>
#include <vector>

#include "pdm/analytic_well.hpp"
#include "pdm/error.hpp"
#include "pdm/operators.hpp"
#include "pdm/params.hpp"
#include "pdm/stable_math.hpp"
#include "pdm/wavefunction.hpp"

namespace pdm {

/// phi_n from the closed form, sampled on every node of `g`.
inline WaveFunction sample_eigenfunction(int n, const PhysicalParams& p, const Grid& g) {
  std::vector<double> s(g.size());
  for (std::size_t i = 0; i < s.size(); ++i) s[i] = eigenfunction(n, g.x_at(i), p);
  return WaveFunction(g, s);
}

/// <x> for level n in closed form:
///   (1 + gamma L) ln(1 + gamma L) / (L gamma^2) (1 + ln^2(1 + gamma L) / (4 pi^2 n^2)) - 1/gamma,
/// rearranged so that it tends smoothly to L/2 as gamma -> 0.
inline double expectation_x(int n, const PhysicalParams& p) {
  detail::require_level(n);
  p.validate();
  const double eps = p.gamma_tilde();
  const double lr = detail::log1p_ratio(eps);
  const double nn = static_cast<double>(n);
  const double tail = (1.0 + eps) * eps * lr * lr * lr / (4.0 * detail::pi * detail::pi * nn * nn);
  return p.length * (detail::xlogx_remainder(eps) + tail);
}

/// <x> of an arbitrary state by quadrature, divided by its norm.
inline double expectation_x(const WaveFunction& psi) {
  const auto w = quadrature_weights(psi.grid());
  double acc = 0.0;
  for (std::size_t i = 0; i < w.size(); ++i)
    acc += w[i] * psi.grid().x_at(i) * std::norm(psi.samples()[i]);
  return acc / psi.norm_sq();
}

enum class MomentumVariant { hermitian, nonhermitian };

/// <phi_n | p_gamma | phi_n> with phi_n sampled on an n_points x-grid and the
/// discrete operator applied. The inner product is the grid one
/// (h * sum over interior nodes), for which the Hermitian matrix is
/// self-adjoint.
inline cplx expectation_p_gamma(int n, const PhysicalParams& p, std::size_t n_points,
                                MomentumVariant variant = MomentumVariant::hermitian) {
  detail::require_level(n);
  detail::require(n_points >= 3 && n_points % 2 == 1,
                  "expectation_p_gamma: needs an odd number (>= 3) of grid points");
  const Grid g = make_x_grid(p, n_points);
  const WaveFunction phi = sample_eigenfunction(n, p, g);
  const OperatorMatrix m = variant == MomentumVariant::hermitian
                               ? build_momentum_hermitian(g, p)
                               : build_momentum_nonhermitian(g, p);
  const auto v = operator_vector(phi);
  const auto mv = m.entries.apply(v);
  cplx num{};
  double den = 0.0;
  for (std::size_t r = 0; r < v.size(); ++r) {
    num += std::conj(v[r]) * mv[r];
    den += std::norm(v[r]);
  }
  return num / den;
}

/// |phi_n1(x) phi_n2(y)|^2 on a square product grid.
struct Density2D {
  int n1 = 1;
  int n2 = 1;
  std::vector<double> axis;
  /// Row-major: values[i * axis.size() + j] is the density at (axis[i], axis[j]).
  std::vector<double> values;

  std::size_t resolution() const { return axis.size(); }
  double at(std::size_t i, std::size_t j) const { return values[i * axis.size() + j]; }

  /// (i, j) of the largest value; the first one in row-major order on ties.
  std::pair<std::size_t, std::size_t> argmax() const {
    std::size_t best = 0;
    for (std::size_t k = 1; k < values.size(); ++k)
      if (values[k] > values[best]) best = k;
    return {best / axis.size(), best % axis.size()};
  }

  /// Tensor-product Simpson integral over the square.
  double integral() const {
    const std::size_t r = axis.size();
    const double h = axis[1] - axis[0];
    std::vector<double> rows(r);
    for (std::size_t i = 0; i < r; ++i)
      rows[i] = integrate(std::span<const double>(values.data() + i * r, r), h);
    return integrate(rows, h);
  }
};

/// Two-dimensional well density for levels (n1, n2) on a resolution x
/// resolution grid over [0, L]^2. Uses the closed-form normalisation.
inline Density2D density_2d(int n1, int n2, const PhysicalParams& p, std::size_t resolution) {
  detail::require_level(n1);
  detail::require_level(n2);
  detail::require(resolution >= 3 && resolution % 2 == 1,
                  "density_2d: resolution must be odd and >= 3");
  const Grid g = make_x_grid(p, resolution);
  Density2D d;
  d.n1 = n1;
  d.n2 = n2;
  d.axis = g.points;
  std::vector<double> fx(resolution), fy(resolution);
  for (std::size_t i = 0; i < resolution; ++i) {
    fx[i] = eigenfunction(n1, g.points[i], p);
    fy[i] = eigenfunction(n2, g.points[i], p);
  }
  d.values.resize(resolution * resolution);
  for (std::size_t i = 0; i < resolution; ++i)
    for (std::size_t j = 0; j < resolution; ++j) {
      const double a = fx[i] * fy[j];
      d.values[i * resolution + j] = a * a;
    }
  return d;
}

}  // namespace pdm
