#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "pdm/error.hpp"
#include "pdm/params.hpp"

namespace pdm {

using cplx = std::complex<double>;

/// Composite Simpson rule on a uniform grid. The point count must be odd
/// and at least 3.
inline double integrate(std::span<const double> f, double spacing) {
  const std::size_t n = f.size();
  detail::require(n >= 3, "integrate: need at least 3 samples");
  detail::require(n % 2 == 1, "integrate: Simpson rule needs an odd number of samples");
  double odd = 0.0, even = 0.0;
  for (std::size_t i = 1; i + 1 < n; i += 2) odd += f[i];
  for (std::size_t i = 2; i + 1 < n; i += 2) even += f[i];
  return spacing / 3.0 * (f[0] + f[n - 1] + 4.0 * odd + 2.0 * even);
}

/// Simpson weights for integrating over physical x on `g`, including the
/// Jacobian dx/ds on deformed grids.
inline std::vector<double> quadrature_weights(const Grid& g) {
  const std::size_t n = g.size();
  detail::require(n >= 3 && n % 2 == 1, "quadrature_weights: need an odd number (>= 3) of points");
  std::vector<double> w(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double simpson = (i == 0 || i == n - 1) ? 1.0 : (i % 2 == 1 ? 4.0 : 2.0);
    w[i] = simpson * g.spacing / 3.0 * g.jacobian_at(i);
  }
  return w;
}

/// Complex samples on every node of a grid (walls included) with the
/// quadrature norm cached at construction.
class WaveFunction {
 public:
  WaveFunction(Grid grid, std::vector<cplx> samples)
      : grid_(std::move(grid)), samples_(std::move(samples)) {
    detail::require(samples_.size() == grid_.size(), "WaveFunction: sample count must match grid");
    for (const cplx& z : samples_)
      detail::require(std::isfinite(z.real()) && std::isfinite(z.imag()),
                      "WaveFunction: samples must be finite");
    norm_sq_ = compute_norm_sq();
  }

  WaveFunction(Grid grid, std::span<const double> samples)
      : WaveFunction(std::move(grid), std::vector<cplx>(samples.begin(), samples.end())) {}

  const Grid& grid() const { return grid_; }
  std::span<const cplx> samples() const { return samples_; }
  double norm_sq() const { return norm_sq_; }

  /// Interior samples, the vector an OperatorMatrix acts on (before the
  /// coordinate factor applied by operator_vector()).
  std::vector<cplx> interior() const {
    return std::vector<cplx>(samples_.begin() + 1, samples_.end() - 1);
  }

  /// Copy scaled to unit quadrature norm.
  WaveFunction normalized() const {
    detail::require(norm_sq_ > 0.0, "WaveFunction::normalized: zero state");
    std::vector<cplx> s(samples_);
    const double scale = 1.0 / std::sqrt(norm_sq_);
    for (cplx& z : s) z *= scale;
    return WaveFunction(grid_, std::move(s));
  }

  std::vector<double> probability_density() const {
    std::vector<double> d(samples_.size());
    for (std::size_t i = 0; i < d.size(); ++i) d[i] = std::norm(samples_[i]);
    return d;
  }

 private:
  double compute_norm_sq() const {
    if (grid_.size() % 2 == 0) {
      // Even point counts fall back to the trapezoid rule.
      double acc = 0.0;
      for (std::size_t i = 0; i < samples_.size(); ++i) {
        const double edge = (i == 0 || i + 1 == samples_.size()) ? 0.5 : 1.0;
        acc += edge * std::norm(samples_[i]) * grid_.jacobian_at(i);
      }
      return acc * grid_.spacing;
    }
    const auto w = quadrature_weights(grid_);
    double acc = 0.0;
    for (std::size_t i = 0; i < samples_.size(); ++i) acc += w[i] * std::norm(samples_[i]);
    return acc;
  }

  Grid grid_;
  std::vector<cplx> samples_;
  double norm_sq_ = 0.0;
};

/// Quadrature inner product <a|b> over physical x.
inline cplx inner_product(const WaveFunction& a, const WaveFunction& b) {
  detail::require(a.grid().same_as(b.grid()), "inner_product: grid mismatch");
  const auto w = quadrature_weights(a.grid());
  cplx acc{};
  for (std::size_t i = 0; i < w.size(); ++i)
    acc += w[i] * std::conj(a.samples()[i]) * b.samples()[i];
  return acc;
}

}  // namespace pdm
