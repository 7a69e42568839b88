#pragma once

#include <cmath>
#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "pdm/error.hpp"
#include "pdm/operators.hpp"
#include "pdm/params.hpp"
#include "pdm/tridiagonal_eigen.hpp"
#include "pdm/wavefunction.hpp"

/// Numerical eigensolver for the V = 0 well. It never consults the closed
/// forms and serves as their independent check.

namespace pdm {

/// Lowest eigenpairs of a discretised Hamiltonian.
struct EigenSolution {
  std::vector<double> energies;
  std::vector<WaveFunction> states;
  Grid grid;
  std::optional<std::vector<double>> richardson_estimate;
  /// Formal order of the scheme until a refinement study measures it.
  double convergence_order = 2.0;
};

/// Richardson-refined energies; `observed_order` is filled when exact
/// reference values are supplied.
struct RichardsonResult {
  std::vector<double> energies;
  std::optional<std::vector<double>> observed_order;
};

namespace detail {

inline void check_solve_sizes(std::size_t n_points, std::size_t k) {
  require(n_points >= 64, "solver needs at least 64 grid points");
  require(n_points % 2 == 1, "solver needs an odd number of grid points (Simpson quadrature)");
  require(k >= 1 && k <= n_points / 4, "number of eigenpairs must satisfy 1 <= K <= N/4");
}

inline EigenSolution eigen_from_tridiagonal(const OperatorMatrix& h, std::size_t k) {
  const std::size_t n = h.size();
  std::vector<double> diag(n), off(n > 0 ? n - 1 : 0);
  for (std::size_t r = 0; r < n; ++r) diag[r] = h.entries(r, r).real();
  for (std::size_t r = 0; r + 1 < n; ++r) off[r] = h.entries(r, r + 1).real();
  const auto pairs = eigen_symmetric_tridiagonal(diag, off, k);

  EigenSolution sol;
  sol.grid = h.grid;
  sol.energies = pairs.values;
  for (const auto& v : pairs.vectors) {
    std::vector<cplx> vc(v.begin(), v.end());
    sol.states.push_back(from_operator_vector(h.grid, vc).normalized());
  }
  return sol;
}

}  // namespace detail

/// Lowest K eigenpairs of p_gamma^2 / 2m with Dirichlet walls, solved on
/// the deformed coordinate s. With chi = sqrt(1 + gamma x) phi the operator
/// is -(hbar^2/2m) d^2/ds^2, a symmetric tridiagonal Toeplitz matrix on a
/// uniform s-grid. States are returned as phi on that s-grid, normalised
/// over physical x.
inline EigenSolution solve_well(const PhysicalParams& p, std::size_t n_points, std::size_t k) {
  detail::check_solve_sizes(n_points, k);
  const Grid g = make_s_grid(p, n_points);
  return detail::eigen_from_tridiagonal(build_hamiltonian(g, p), k);
}

/// Same contract as solve_well, discretising (1/2m) P^dagger P directly on
/// a uniform x-grid.
inline EigenSolution solve_well_xgrid(const PhysicalParams& p, std::size_t n_points,
                                      std::size_t k) {
  detail::check_solve_sizes(n_points, k);
  const Grid g = make_x_grid(p, n_points);
  return detail::eigen_from_tridiagonal(build_hamiltonian(g, p), k);
}

/// (4 E_fine - E_coarse) / 3 level by level, for a fine grid with half the
/// spacing of the coarse one. When `exact` is given, also reports
/// log2((E_c - E_exact) / (E_f - E_exact)).
inline RichardsonResult richardson_refine(const EigenSolution& coarse, const EigenSolution& fine,
                                          std::span<const double> exact = {}) {
  const double ratio = coarse.grid.spacing / fine.grid.spacing;
  detail::require(coarse.grid.coordinate == fine.grid.coordinate &&
                      coarse.grid.gamma == fine.grid.gamma,
                  "richardson_refine: solutions come from different problems");
  detail::require(std::abs(ratio - 2.0) <= 1e-9,
                  "richardson_refine: fine grid spacing must be half the coarse spacing");
  detail::require(fine.grid.size() == 2 * coarse.grid.size() - 1,
                  "richardson_refine: fine grid must have 2N - 1 points");
  const std::size_t levels = std::min(coarse.energies.size(), fine.energies.size());
  RichardsonResult out;
  out.energies.resize(levels);
  for (std::size_t i = 0; i < levels; ++i)
    out.energies[i] = (4.0 * fine.energies[i] - coarse.energies[i]) / 3.0;
  if (!exact.empty()) {
    std::vector<double> order(std::min(levels, exact.size()));
    for (std::size_t i = 0; i < order.size(); ++i)
      order[i] = std::log2(std::abs(coarse.energies[i] - exact[i]) /
                           std::abs(fine.energies[i] - exact[i]));
    out.observed_order = std::move(order);
  }
  return out;
}

/// Observed order log2((E_1 - E_2) / (E_2 - E_3)) from three successive
/// halvings of the grid spacing; needs no exact value.
inline double observed_order(double coarse, double medium, double fine) {
  return std::log2(std::abs(coarse - medium) / std::abs(medium - fine));
}

/// solve_well on N and 2N - 1 points; returns the fine solution with the
/// Richardson estimate attached.
inline EigenSolution solve_well_refined(const PhysicalParams& p, std::size_t n_points,
                                        std::size_t k) {
  const EigenSolution coarse = solve_well(p, n_points, k);
  EigenSolution fine = solve_well(p, 2 * n_points - 1, k);
  fine.richardson_estimate = richardson_refine(coarse, fine).energies;
  return fine;
}

}  // namespace pdm
