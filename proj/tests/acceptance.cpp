// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any FAIL.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "pdm/pdm.hpp"

namespace {

using namespace pdm;

const std::vector<double> kSweep{-0.5, 0.5, 1.0, 5.0};

PhysicalParams unit(double gt) { return PhysicalParams::from_gamma_tilde(gt); }
double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

struct Outcome {
  bool pass;
  std::string summary;
};

std::string fmt(const char* f, double a, double b = 0.0, double c = 0.0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, a, b, c);
  return buf;
}

// Cached refined solves, reused by the bound criterion.
struct SweepSolve {
  double gt;
  EigenSolution fine;
  double seconds;
};
std::vector<SweepSolve>& sweep_solves() {
  static std::vector<SweepSolve> solves = [] {
    std::vector<SweepSolve> v;
    for (double gt : kSweep) {
      const auto t0 = std::chrono::steady_clock::now();
      EigenSolution fine = solve_well_refined(unit(gt), 8001, 10);
      const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
      v.push_back({gt, std::move(fine), s});
    }
    return v;
  }();
  return solves;
}

Outcome spectrum_oracle() {
  double worst = 0.0, worst_shift_free = 0.0, slowest = 0.0;
  for (const auto& s : sweep_solves()) {
    const PhysicalParams p = unit(s.gt);
    slowest = std::max(slowest, s.seconds);
    for (int n = 1; n <= 10; ++n) {
      const double e = (*s.fine.richardson_estimate)[n - 1];
      worst = std::max(worst, rel(e, energy(n, p)));
      worst_shift_free = std::max(worst_shift_free, rel(e, reference_energy_ref3(n, p)));
    }
  }
  return {worst <= 1e-6 && slowest <= 5.0,
          fmt("max rel err vs closed-form E_n %.3e (tol 1e-6); vs shift-free levels %.3e; slowest %.2f s",
              worst, worst_shift_free, slowest)};
}

Outcome classical_limit() {
  const PhysicalParams p = unit(1e-8);
  const double e0 = std::numbers::pi * std::numbers::pi / 2.0;
  const EigenSolution sol = solve_well_refined(p, 8001, 10);
  double worst = 0.0;
  for (int n = 1; n <= 10; ++n) {
    worst = std::max(worst, std::abs(energy(n, p) / e0 - n * n) / (n * n));
    worst = std::max(worst, std::abs((*sol.richardson_estimate)[n - 1] / e0 - n * n) / (n * n));
  }
  const double x_err = std::abs(expectation_x(1, p) - 0.5);
  return {worst <= 1e-6 && x_err <= 1e-8, fmt("max |E_n/E0 - n^2|/n^2 %.3e (tol 1e-6); |<x>/L - 1/2| %.3e (tol 1e-8)",
                                              worst, x_err)};
}

Outcome energy_shift() {
  std::mt19937_64 rng(20240611);
  std::uniform_real_distribution<double> ugt(-0.95, 10.0), ul(0.2, 5.0), uh(0.3, 3.0);
  std::uniform_int_distribution<int> un(1, 30);
  double worst = 0.0;
  for (int i = 0; i < 20; ++i) {
    const double length = ul(rng);
    const PhysicalParams p{uh(rng), uh(rng), length, ugt(rng) / length};
    const int n = un(rng);
    const double shift = 3.0 * p.hbar * p.hbar * p.gamma * p.gamma / (8.0 * p.mass);
    const double diff = energy(n, p) - reference_energy_ref3(n, p);
    worst = std::max(worst, std::abs(diff - shift) / energy(n, p));
  }
  const double tol = 4.0 * std::numeric_limits<double>::epsilon();
  return {worst <= tol, fmt("max |dE - 3 hbar^2 gamma^2/8m| / E_n %.3e (tol %.3e)", worst, tol)};
}

Outcome hermiticity() {
  double worst = 0.0, offset = 0.0;
  for (double gt : kSweep)
    for (std::size_t n : {101u, 1001u, 8001u}) {
      const PhysicalParams p = unit(gt);
      const Grid gx = make_x_grid(p, n);
      for (const auto& m : {build_momentum_hermitian(gx, p), build_hamiltonian(gx, p),
                            build_hamiltonian(make_s_grid(p, n), p)})
        worst = std::max(worst, hermiticity_defect(m) / m.entries.max_norm());
      offset = std::max(offset, std::abs(hermiticity_defect(build_momentum_nonhermitian(gx, p)) - std::abs(p.gamma)));
    }
  return {worst <= 1e-13 && offset <= 1e-12,
          fmt("max defect/||M|| %.3e (tol 1e-13); | defect_nonherm - hbar|gamma| | %.3e (tol 1e-12)", worst, offset)};
}

Outcome normalization_orthogonality() {
  double worst_norm = 0.0, worst_overlap = 0.0;
  for (double gt : kSweep) {
    const PhysicalParams p = unit(gt);
    const Grid g = make_x_grid(p, 8001);
    std::vector<WaveFunction> phi;
    for (int n = 1; n <= 10; ++n) phi.push_back(sample_eigenfunction(n, p, g));
    for (std::size_t a = 0; a < phi.size(); ++a) {
      worst_norm = std::max(worst_norm, std::abs(phi[a].norm_sq() - 1.0));
      for (std::size_t b = 0; b < a; ++b) worst_overlap = std::max(worst_overlap, std::abs(inner_product(phi[a], phi[b])));
    }
  }
  return {worst_norm <= 1e-10 && worst_overlap <= 1e-8,
          fmt("max |norm - 1| %.3e (tol 1e-10); max |<phi_m|phi_n>| %.3e (tol 1e-8)", worst_norm, worst_overlap)};
}

Outcome expectation_values() {
  double worst_x = 0.0, worst_p = 0.0, spread = 0.0;
  for (double gt : kSweep) {
    const PhysicalParams p = unit(gt);
    const Grid g = make_x_grid(p, 20001);
    for (int n : {1, 2, 3, 20})
      worst_x = std::max(worst_x, rel(expectation_x(sample_eigenfunction(n, p, g)), expectation_x(n, p)));
    for (int n = 1; n <= 20; ++n) worst_p = std::max(worst_p, std::abs(expectation_p_gamma(n, p, 8001)));
  }
  for (int i = 0; i <= 100; ++i) {
    const PhysicalParams p = unit(i / 100.0);
    spread = std::max(spread, std::abs(expectation_x(1, p) - expectation_x(20, p)));
  }
  return {worst_x <= 1e-8 && worst_p <= 1e-8 && spread <= 0.02,
          fmt("<x> closed vs quadrature %.3e (tol 1e-8); max |<p_gamma>| %.3e (tol 1e-8); n=1 vs 20 spread %.5f (tol 0.02)",
              worst_x, worst_p, spread)};
}

Outcome square_integrability_bound() {
  double margin = std::numeric_limits<double>::infinity();
  for (const auto& s : sweep_solves()) {
    const PhysicalParams p = unit(s.gt);
    for (int n = 1; n <= 10; ++n) {
      margin = std::min(margin, energy(n, p) - energy_bound(p));
      margin = std::min(margin, s.fine.energies[n - 1] - energy_bound(p));
      margin = std::min(margin, (*s.fine.richardson_estimate)[n - 1] - energy_bound(p));
    }
  }
  return {margin > 0.0, fmt("min (E - 3 hbar^2 gamma^2/8m) %.6f (must be > 0)", margin)};
}

Outcome vonroos_consistency() {
  const double pi = std::numbers::pi;
  auto s4 = [=](double x) { return std::pow(std::sin(pi * x), 4); };
  const std::vector<std::function<double(double)>> funcs = {
      s4,
      [=](double x) { return s4(x) * std::cos(pi * x); },
      [](double x) { return 256.0 * std::pow(x * (1.0 - x), 4); },
      [=](double x) { return s4(x) * std::exp(x); },
      [=](double x) { return std::pow(std::sin(pi * x) * std::sin(2.0 * pi * x), 2); },
  };
  double lo = 1e300, hi = -1e300;
  for (double gt : kSweep) {
    const PhysicalParams p = unit(gt);
    for (const auto& f : funcs) {
      std::vector<double> res;
      for (std::size_t n : {401u, 801u, 1601u}) {
        const Grid g = make_x_grid(p, n);
        std::vector<double> v(g.size());
        for (std::size_t i = 0; i < v.size(); ++i) v[i] = f(g.x_at(i));
        const WaveFunction psi(g, v);
        const WaveFunction a = apply(build_vonroos_kinetic(g, p, -0.25, -0.5, -0.25), psi);
        const WaveFunction b = apply(build_kinetic(g, p), psi);
        double worst = 0.0;
        for (std::size_t i = 1; i + 1 < g.size(); ++i) worst = std::max(worst, std::abs(a.samples()[i] - b.samples()[i]));
        res.push_back(worst);
      }
      for (std::size_t k = 1; k < res.size(); ++k) {
        const double order = std::log2(res[k - 1] / res[k]);
        lo = std::min(lo, order);
        hi = std::max(hi, order);
      }
    }
  }
  return {lo >= 1.8 && hi <= 2.2, fmt("measured residual orders in [%.4f, %.4f] (required [1.8, 2.2])", lo, hi)};
}

Outcome unitarity() {
  const PhysicalParams p = unit(1.0);
  const EigenSolution sol = solve_well_xgrid(p, 401, 1);
  const double dt = 1e-4;
  const int steps = 1000;
  const double herm = max_norm_drift(propagate(sol.states[0], build_hamiltonian(sol.grid, p), dt, steps));
  const double nonh = max_norm_drift(propagate(sol.states[0], build_hamiltonian_nonhermitian(sol.grid, p), dt, steps));
  return {herm <= 1e-10 && nonh > 1e-6,
          fmt("Hermitian drift %.3e (tol 1e-10); non-Hermitian drift %.3e (must exceed 1e-6)", herm, nonh)};
}

Outcome density_quadrant() {
  const Density2D d = density_2d(1, 1, unit(1.0), 513);
  const auto [i, j] = d.argmax();
  return {d.axis[i] < 0.5 && d.axis[j] < 0.5, fmt("argmax at (%.4f, %.4f)", d.axis[i], d.axis[j])};
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, Outcome (*)()>> criteria = {
      {"spectrum oracle equivalence", spectrum_oracle},
      {"classical limit", classical_limit},
      {"energy shift", energy_shift},
      {"hermiticity", hermiticity},
      {"normalization and orthogonality", normalization_orthogonality},
      {"expectation values", expectation_values},
      {"square-integrability bound", square_integrability_bound},
      {"von Roos consistency", vonroos_consistency},
      {"unitarity discriminator", unitarity},
      {"two-dimensional density quadrant", density_quadrant},
  };
  int failures = 0;
  for (std::size_t k = 0; k < criteria.size(); ++k) {
    Outcome o{false, ""};
    try {
      o = criteria[k].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    if (!o.pass) ++failures;
    std::printf("[%s] criterion %zu, %s: %s\n", o.pass ? "PASS" : "FAIL", k + 1, criteria[k].first, o.summary.c_str());
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
