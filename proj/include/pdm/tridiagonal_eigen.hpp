#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <random>
#include <span>
#include <vector>

#include "pdm/banded.hpp"
#include "pdm/error.hpp"

/// Lowest eigenpairs of a real symmetric tridiagonal matrix by Sturm-count
/// bisection followed by inverse iteration.

namespace pdm {

/// K smallest eigenvalues (ascending) and unit-Euclidean-norm eigenvectors.
struct TridiagonalEigenpairs {
  std::vector<double> values;
  std::vector<std::vector<double>> vectors;
};

struct TridiagonalEigenOptions {
  int max_bisection_steps = 128;
  int max_inverse_iterations = 100;
  /// Residual target ||T v - lambda v||_inf / ||T||_inf.
  double residual_tolerance = 1e-12;
};

namespace detail {

// Number of eigenvalues of T strictly below sigma (negative pivots of
// T - sigma I), with Kahan's safeguard against zero pivots.
inline std::size_t sturm_count(std::span<const double> diag, std::span<const double> off,
                               double sigma, double pivmin) {
  std::size_t count = 0;
  double q = diag[0] - sigma;
  if (std::abs(q) < pivmin) q = -pivmin;
  if (q < 0.0) ++count;
  for (std::size_t i = 1; i < diag.size(); ++i) {
    q = (diag[i] - sigma) - off[i - 1] * off[i - 1] / q;
    if (std::abs(q) < pivmin) q = -pivmin;
    if (q < 0.0) ++count;
  }
  return count;
}

}  // namespace detail

/// Deterministic: a fixed-seed start vector is used for inverse iteration.
/// Eigenvectors are signed so that their first nonzero component is
/// positive. Throws ConvergenceError (with the eigenpair index) if an
/// iteration cap is reached.
inline TridiagonalEigenpairs eigen_symmetric_tridiagonal(std::span<const double> diag,
                                                         std::span<const double> offdiag,
                                                         std::size_t k,
                                                         const TridiagonalEigenOptions& opt = {}) {
  const std::size_t n = diag.size();
  detail::require(n >= 1, "eigen_symmetric_tridiagonal: empty matrix");
  detail::require(offdiag.size() + 1 == n,
                  "eigen_symmetric_tridiagonal: offdiag must have length n - 1");
  detail::require(k >= 1 && k <= n, "eigen_symmetric_tridiagonal: need 1 <= K <= n");

  // Gershgorin interval and infinity norm.
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  double tnorm = 0.0;
  double max_off_sq = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double r = (i > 0 ? std::abs(offdiag[i - 1]) : 0.0) + (i + 1 < n ? std::abs(offdiag[i]) : 0.0);
    lo = std::min(lo, diag[i] - r);
    hi = std::max(hi, diag[i] + r);
    tnorm = std::max(tnorm, std::abs(diag[i]) + r);
    if (i + 1 < n) max_off_sq = std::max(max_off_sq, offdiag[i] * offdiag[i]);
  }
  const double eps = std::numeric_limits<double>::epsilon();
  const double pivmin = std::numeric_limits<double>::min() * std::max(1.0, max_off_sq);
  const double radius = std::max(std::abs(lo), std::abs(hi));
  lo -= 2.0 * eps * radius + pivmin;
  hi += 2.0 * eps * radius + pivmin;

  TridiagonalEigenpairs out;
  out.values.resize(k);
  for (std::size_t idx = 0; idx < k; ++idx) {
    double a = lo, b = hi;
    int steps = 0;
    for (;; ++steps) {
      const double width = b - a;
      // Relative width, floored at eps^2 ||T|| so a zero eigenvalue terminates.
      if (width <= 2.0 * eps * std::max(std::abs(a), std::abs(b)) + eps * eps * tnorm + pivmin) break;
      const double mid = 0.5 * (a + b);
      if (mid <= a || mid >= b) break;
      if (steps >= opt.max_bisection_steps)
        throw ConvergenceError("bisection did not converge", idx);
      if (detail::sturm_count(diag, offdiag, mid, pivmin) > idx) {
        b = mid;
      } else {
        a = mid;
      }
    }
    out.values[idx] = 0.5 * (a + b);
    // Later eigenvalues are at least this one.
    lo = std::max(lo, a);
  }

  if (tnorm == 0.0) {
    for (std::size_t idx = 0; idx < k; ++idx) {
      std::vector<double> e(n, 0.0);
      e[idx] = 1.0;
      out.vectors.push_back(std::move(e));
    }
    return out;
  }

  std::mt19937_64 rng(0x5eed1234ULL);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  const double cluster = 1e-3 * tnorm;
  const double tiny = eps * tnorm;

  auto residual = [&](const std::vector<double>& v, double lambda) {
    double r = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      double tv = (diag[i] - lambda) * v[i];
      if (i > 0) tv += offdiag[i - 1] * v[i - 1];
      if (i + 1 < n) tv += offdiag[i] * v[i + 1];
      r = std::max(r, std::abs(tv));
    }
    return r;
  };
  auto normalize = [](std::vector<double>& v) {
    double s = 0.0;
    for (double x : v) s += x * x;
    s = std::sqrt(s);
    for (double& x : v) x /= s;
  };

  for (std::size_t idx = 0; idx < k; ++idx) {
    const double lambda = out.values[idx];
    BandedMatrix<double> shifted(n, 1, 1);
    for (std::size_t i = 0; i < n; ++i) shifted.at(i, i) = diag[i] - lambda;
    for (std::size_t i = 0; i + 1 < n; ++i) {
      shifted.at(i, i + 1) = offdiag[i];
      shifted.at(i + 1, i) = offdiag[i];
    }
    const BandedLU<double> lu(shifted, tiny);

    std::vector<double> v(n);
    for (double& x : v) x = unit(rng);
    normalize(v);

    bool converged = false;
    for (int it = 0; it < opt.max_inverse_iterations; ++it) {
      lu.solve_in_place(v);
      for (std::size_t j = 0; j < idx; ++j) {
        if (std::abs(out.values[j] - lambda) > cluster) continue;
        double dot = 0.0;
        for (std::size_t i = 0; i < n; ++i) dot += v[i] * out.vectors[j][i];
        for (std::size_t i = 0; i < n; ++i) v[i] -= dot * out.vectors[j][i];
      }
      normalize(v);
      if (it >= 1 && residual(v, lambda) <= opt.residual_tolerance * tnorm) {
        converged = true;
        break;
      }
    }
    if (!converged) throw ConvergenceError("inverse iteration did not converge", idx);

    for (double x : v) {
      if (x == 0.0) continue;
      if (x < 0.0)
        for (double& y : v) y = -y;
      break;
    }
    out.vectors.push_back(std::move(v));
  }
  return out;
}

}  // namespace pdm
