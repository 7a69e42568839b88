#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <vector>

#include "pdm/banded.hpp"
#include "pdm/error.hpp"
#include "pdm/operators.hpp"
#include "pdm/wavefunction.hpp"

namespace pdm {

/// Per-step diagnostics of a Crank-Nicolson run. Entry 0 is the initial
/// state; a run that trips the divergence guard stops early.
struct PropagationRun {
  double dt = 0.0;
  int steps = 0;
  std::vector<double> norm_history;
  std::vector<double> energy_history;
  std::vector<double> position_history;
  bool diverged = false;
};

/// Norm above which a run is declared divergent.
inline constexpr double kDivergenceNorm = 10.0;

/// Crank-Nicolson propagation
///   psi_{k+1} = (I + i H dt / 2 hbar)^{-1} (I - i H dt / 2 hbar) psi_k.
///
/// The state is first scaled to unit norm in the grid inner product
/// (spacing * Euclidean on the operator vector), the product in which a
/// Hermitian H makes each step unitary. Norms, <H> and <x> are recorded in
/// that product. Energies are normalised by the current norm.
inline PropagationRun propagate(const WaveFunction& psi0, const OperatorMatrix& h, double dt,
                                int steps, double hbar = 1.0) {
  detail::require(dt > 0.0 && std::isfinite(dt), "propagate: dt must be positive");
  detail::require(steps >= 0, "propagate: steps must be non-negative");
  detail::require(hbar > 0.0, "propagate: hbar must be positive");
  detail::require(h.grid.same_as(psi0.grid()), "propagate: H and psi0 live on different grids");

  const Grid& g = h.grid;
  const std::size_t n = h.size();
  const double spacing = g.spacing;
  std::vector<double> xs(n);
  for (std::size_t r = 0; r < n; ++r) xs[r] = g.x_at(r + 1);

  auto norm_sq = [&](const std::vector<cplx>& v) {
    double acc = 0.0;
    for (const cplx& z : v) acc += std::norm(z);
    return acc * spacing;
  };

  std::vector<cplx> v = operator_vector(psi0);
  {
    const double n0 = norm_sq(v);
    detail::require(n0 > 0.0, "propagate: zero initial state");
    const double s = 1.0 / std::sqrt(n0);
    for (cplx& z : v) z *= s;
  }

  const cplx half_step(0.0, dt / (2.0 * hbar));
  BandedMatrix<cplx> implicit_part = h.entries;
  implicit_part *= half_step;
  BandedMatrix<cplx> explicit_part = h.entries;
  explicit_part *= -half_step;
  implicit_part.add_diagonal(cplx(1.0));
  explicit_part.add_diagonal(cplx(1.0));
  const BandedLU<cplx> lu(implicit_part);

  PropagationRun run;
  run.dt = dt;
  run.steps = steps;
  auto record = [&]() {
    const double nrm = norm_sq(v);
    const auto hv = h.entries.apply(v);
    cplx e{};
    double x = 0.0;
    for (std::size_t r = 0; r < n; ++r) {
      e += std::conj(v[r]) * hv[r];
      x += xs[r] * std::norm(v[r]);
    }
    run.norm_history.push_back(nrm);
    run.energy_history.push_back(e.real() * spacing / nrm);
    run.position_history.push_back(x * spacing / nrm);
    return nrm;
  };

  record();
  for (int step = 0; step < steps; ++step) {
    v = explicit_part.apply(v);
    lu.solve_in_place(v);
    const double nrm = record();
    if (!(nrm <= kDivergenceNorm)) {
      run.diverged = true;
      run.steps = step + 1;
      break;
    }
  }
  return run;
}

/// max_k |norm_k - 1| over a run.
inline double max_norm_drift(const PropagationRun& run) {
  double worst = 0.0;
  for (double n : run.norm_history) worst = std::max(worst, std::abs(n - 1.0));
  return worst;
}

}  // namespace pdm
