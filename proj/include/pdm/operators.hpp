#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "pdm/banded.hpp"
#include "pdm/error.hpp"
#include "pdm/params.hpp"
#include "pdm/wavefunction.hpp"

/// Grid discretisations of the deformed momentum, its square and the
/// von Roos kinetic operator, all with Dirichlet walls.
///
/// Matrices act on interior nodes only (the wall rows and columns are
/// eliminated). On an x-grid the vector is the interior samples of phi; on
/// an s-grid it is chi = sqrt(1 + gamma x) phi, the representation in which
/// the quadrature measure is plain ds and the kinetic term has constant
/// coefficients.

namespace pdm {

struct OperatorMatrix {
  BandedMatrix<cplx> entries;
  Grid grid;

  std::size_t size() const { return entries.size(); }
};

namespace detail {

inline void check_grid(const Grid& g, const PhysicalParams& p) {
  p.validate();
  require(g.size() >= 3, "grid needs at least 3 points");
  require(g.gamma == p.gamma, "grid was built for a different gamma");
  const double end = g.coordinate == Coordinate::physical_x
                         ? p.length
                         : deformed_coordinate(p.length, p.deformation());
  require(std::abs(g.points.back() - end) <= 1e-12 * std::abs(end),
          "grid endpoint does not match the well width");
  require(std::abs(g.spacing * static_cast<double>(g.size() - 1) - end) <= 1e-12 * std::abs(end),
          "grid spacing is not uniform over the well");
}

inline void require_x_grid(const Grid& g, const char* who) {
  require(g.coordinate == Coordinate::physical_x, std::string(who) + ": needs an x-grid");
}

// 1 + gamma x at node i.
inline double wall_factor(const Grid& g, std::size_t i) { return 1.0 + g.gamma * g.x_at(i); }

// Real antisymmetric centered difference on interior nodes: (v[i+1]-v[i-1])/(2h).
inline BandedMatrix<double> centered_difference(std::size_t n, double h) {
  BandedMatrix<double> d(n, 1, 1);
  for (std::size_t r = 0; r + 1 < n; ++r) {
    d.at(r, r + 1) = 0.5 / h;
    d.at(r + 1, r) = -0.5 / h;
  }
  return d;
}

inline std::vector<double> interior_potential(std::span<const double> v, const Grid& g) {
  const std::size_t n = g.interior_size();
  std::vector<double> out(n, 0.0);
  if (v.empty()) return out;
  require(v.size() == g.size(), "potential must be sampled on every grid node");
  for (std::size_t r = 0; r < n; ++r) {
    require(std::isfinite(v[r + 1]), "potential must be finite");
    out[r] = v[r + 1];
  }
  return out;
}

}  // namespace detail

/// Discrete p_gamma = -i hbar sqrt(f) d/dx sqrt(f), f = 1 + gamma x, with
/// centered differences. Expands to -i hbar (f d/dx + gamma/2); the matrix is
/// exactly Hermitian for every grid.
inline OperatorMatrix build_momentum_hermitian(const Grid& g, const PhysicalParams& p) {
  detail::check_grid(g, p);
  detail::require_x_grid(g, "build_momentum_hermitian");
  const std::size_t n = g.interior_size();
  const double h = g.spacing;
  BandedMatrix<cplx> m(n, 1, 1);
  for (std::size_t r = 0; r + 1 < n; ++r) {
    const double a = std::sqrt(detail::wall_factor(g, r + 1)) * std::sqrt(detail::wall_factor(g, r + 2));
    const cplx upper(0.0, -p.hbar * a / (2.0 * h));
    m.at(r, r + 1) = upper;
    m.at(r + 1, r) = std::conj(upper);
  }
  return {std::move(m), g};
}

/// Discrete -i hbar (1 + gamma x) d/dx, assembled as the Hermitian matrix
/// plus the constant i hbar gamma / 2 it differs by. Not Hermitian unless
/// gamma = 0; the defect is exactly hbar |gamma|.
inline OperatorMatrix build_momentum_nonhermitian(const Grid& g, const PhysicalParams& p) {
  OperatorMatrix m = build_momentum_hermitian(g, p);
  m.entries.add_diagonal(cplx(0.0, 0.5 * p.hbar * p.gamma));
  return m;
}

/// D_gamma psi = (1 + gamma x) psi' + (gamma / 2) psi on every node of an
/// x-grid. Interior nodes use the same stencil as build_momentum_hermitian
/// (wall samples included); the two wall nodes use one-sided second-order
/// differences of sqrt(f) psi.
inline WaveFunction apply_D_gamma(const WaveFunction& psi, const PhysicalParams& p) {
  const Grid& g = psi.grid();
  detail::check_grid(g, p);
  detail::require_x_grid(g, "apply_D_gamma");
  const std::size_t n = g.size();
  const double h = g.spacing;
  std::vector<double> root(n);
  std::vector<cplx> weighted(n);
  for (std::size_t i = 0; i < n; ++i) {
    root[i] = std::sqrt(detail::wall_factor(g, i));
    weighted[i] = root[i] * psi.samples()[i];
  }
  std::vector<cplx> out(n);
  for (std::size_t i = 1; i + 1 < n; ++i)
    out[i] = root[i] * (weighted[i + 1] - weighted[i - 1]) / (2.0 * h);
  out[0] = root[0] * (-3.0 * weighted[0] + 4.0 * weighted[1] - weighted[2]) / (2.0 * h);
  out[n - 1] =
      root[n - 1] * (3.0 * weighted[n - 1] - 4.0 * weighted[n - 2] + weighted[n - 3]) / (2.0 * h);
  return WaveFunction(g, std::move(out));
}

/// Kinetic operator (1/2m) P^dagger P, with P the node-to-midpoint centered
/// difference of sqrt(f) d/dx sqrt(f). Real symmetric tridiagonal; at
/// gamma = 0 it is the standard three-point box Laplacian. On an s-grid it
/// is -(hbar^2/2m) d^2/ds^2 acting on chi.
inline OperatorMatrix build_kinetic(const Grid& g, const PhysicalParams& p) {
  detail::check_grid(g, p);
  const std::size_t n = g.interior_size();
  const double h = g.spacing;
  const double c = p.hbar * p.hbar / (2.0 * p.mass * h * h);
  BandedMatrix<cplx> m(n, 1, 1);
  if (g.coordinate == Coordinate::deformed_s) {
    for (std::size_t r = 0; r < n; ++r) m.at(r, r) = 2.0 * c;
    for (std::size_t r = 0; r + 1 < n; ++r) {
      m.at(r, r + 1) = -c;
      m.at(r + 1, r) = -c;
    }
    return {std::move(m), g};
  }
  auto midpoint_factor = [&](std::size_t i) {
    return 1.0 + p.gamma * 0.5 * (g.points[i] + g.points[i + 1]);
  };
  for (std::size_t r = 0; r < n; ++r) {
    const std::size_t i = r + 1;
    m.at(r, r) = c * detail::wall_factor(g, i) * (midpoint_factor(i - 1) + midpoint_factor(i));
  }
  for (std::size_t r = 0; r + 1 < n; ++r) {
    const std::size_t i = r + 1;
    const double off = -c * std::sqrt(detail::wall_factor(g, i)) *
                       std::sqrt(detail::wall_factor(g, i + 1)) * midpoint_factor(i);
    m.at(r, r + 1) = off;
    m.at(r + 1, r) = off;
  }
  return {std::move(m), g};
}

/// H = p_gamma^2 / 2m + V. `potential` holds V on every grid node (empty
/// means V = 0); only interior values enter. Hermitian by construction.
inline OperatorMatrix build_hamiltonian(const Grid& g, const PhysicalParams& p,
                                        std::span<const double> potential = {}) {
  OperatorMatrix h = build_kinetic(g, p);
  const auto v = detail::interior_potential(potential, g);
  std::vector<cplx> vc(v.begin(), v.end());
  h.entries.add_diagonal(std::span<const cplx>(vc));
  return h;
}

/// Hamiltonian built from the non-Hermitian momentum: P_nh P_nh / 2m + V on
/// an x-grid. Used to contrast norm behaviour under time evolution.
inline OperatorMatrix build_hamiltonian_nonhermitian(const Grid& g, const PhysicalParams& p,
                                                     std::span<const double> potential = {}) {
  const OperatorMatrix pm = build_momentum_nonhermitian(g, p);
  BandedMatrix<cplx> h = pm.entries * pm.entries;
  h *= cplx(1.0 / (2.0 * p.mass));
  const auto v = detail::interior_potential(potential, g);
  std::vector<cplx> vc(v.begin(), v.end());
  h.add_diagonal(std::span<const cplx>(vc));
  return {std::move(h), g};
}

/// m_e(x) = m / (1 + gamma x)^2.
inline double effective_mass(double x, const PhysicalParams& p) {
  const double f = 1.0 + p.gamma * x;
  detail::require(f > 0.0, "effective_mass: requires 1 + gamma x > 0");
  return p.mass / (f * f);
}

/// von Roos kinetic operator
///   T = 1/4 (m^a p m^b p m^c + m^c p m^b p m^a),  a + b + c = -1,
/// with p = -i hbar d/dx as a centered difference on the nodes and the mass
/// powers m_e(x)^k as diagonal factors sampled on the nodes.
inline OperatorMatrix build_vonroos_kinetic(const Grid& g, const PhysicalParams& p, double alpha,
                                            double beta, double gamma_order) {
  detail::check_grid(g, p);
  detail::require_x_grid(g, "build_vonroos_kinetic");
  detail::require(std::abs(alpha + beta + gamma_order + 1.0) <= 1e-12,
                  "build_vonroos_kinetic: ordering parameters must sum to -1");
  const std::size_t n = g.interior_size();
  std::vector<double> ma(n), mb(n), mc(n), ones(n, 1.0);
  for (std::size_t r = 0; r < n; ++r) {
    const double me = effective_mass(g.x_at(r + 1), p);
    ma[r] = std::pow(me, alpha);
    mb[r] = std::pow(me, beta);
    mc[r] = std::pow(me, gamma_order);
  }
  const auto d = detail::centered_difference(n, g.spacing);
  const BandedMatrix<double> inner = d.scaled(ones, mb) * d;
  BandedMatrix<double> t = inner.scaled(ma, mc) + inner.scaled(mc, ma);
  t *= -0.25 * p.hbar * p.hbar;
  return {t.cast<cplx>(), g};
}

/// max |M - M^dagger| over all entries.
inline double hermiticity_defect(const BandedMatrix<cplx>& m) {
  double worst = 0.0;
  const std::size_t n = m.size();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = m.row_begin(i); j < m.row_end(i); ++j)
      worst = std::max(worst, std::abs(m(i, j) - std::conj(m(j, i))));
  return worst;
}

inline double hermiticity_defect(const OperatorMatrix& m) { return hermiticity_defect(m.entries); }

/// Interior vector the operator acts on (chi on s-grids).
inline std::vector<cplx> operator_vector(const WaveFunction& psi) {
  const Grid& g = psi.grid();
  std::vector<cplx> v = psi.interior();
  if (g.coordinate == Coordinate::deformed_s)
    for (std::size_t r = 0; r < v.size(); ++r) v[r] *= std::sqrt(g.jacobian_at(r + 1));
  return v;
}

/// Inverse of operator_vector: wall samples are zero.
inline WaveFunction from_operator_vector(const Grid& g, std::span<const cplx> v) {
  detail::require(v.size() == g.interior_size(), "from_operator_vector: dimension mismatch");
  std::vector<cplx> s(g.size(), cplx{});
  for (std::size_t r = 0; r < v.size(); ++r) {
    s[r + 1] = v[r];
    if (g.coordinate == Coordinate::deformed_s) s[r + 1] /= std::sqrt(g.jacobian_at(r + 1));
  }
  return WaveFunction(g, std::move(s));
}

/// M psi, with psi and the result as wave functions on M's grid.
inline WaveFunction apply(const OperatorMatrix& m, const WaveFunction& psi) {
  detail::require(m.grid.same_as(psi.grid()), "apply: grid mismatch");
  const auto v = operator_vector(psi);
  const auto out = m.entries.apply(v);
  return from_operator_vector(m.grid, out);
}

}  // namespace pdm
