#pragma once

#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

#include "pdm/deformed_algebra.hpp"
#include "pdm/error.hpp"

namespace pdm {

/// Smallest admitted value of 1 + gamma L.
inline constexpr double kMinWallFactor = 1e-9;

/// Physical constants of the problem. Natural units hbar = m = L = 1 are the
/// default.
struct PhysicalParams {
  double hbar = 1.0;
  double mass = 1.0;
  double length = 1.0;
  double gamma = 0.0;

  /// Builds parameters from the dimensionless gamma_tilde = gamma L.
  static PhysicalParams from_gamma_tilde(double gamma_tilde, double length = 1.0,
                                         double hbar = 1.0, double mass = 1.0) {
    return PhysicalParams{hbar, mass, length, gamma_tilde / length};
  }

  double gamma_tilde() const { return gamma * length; }
  Deformation deformation() const { return Deformation{gamma}; }

  /// Throws ValidationError unless hbar, mass, L > 0 and gamma L > -1.
  void validate() const {
    detail::require(std::isfinite(hbar) && hbar > 0.0, "hbar must be positive and finite");
    detail::require(std::isfinite(mass) && mass > 0.0, "mass must be positive and finite");
    detail::require(std::isfinite(length) && length > 0.0, "length must be positive and finite");
    detail::require(std::isfinite(gamma), "gamma must be finite");
    detail::require(1.0 + gamma * length > kMinWallFactor,
                    "gamma*L must exceed -1 (got " + std::to_string(gamma * length) + ")");
  }
};

enum class Coordinate { physical_x, deformed_s };

/// Uniform 1-D grid including both walls. On a deformed_s grid the nodes are
/// uniform in s = ln(1 + gamma x)/gamma and `gamma` records the map back to x.
struct Grid {
  Coordinate coordinate = Coordinate::physical_x;
  std::vector<double> points;
  double spacing = 0.0;
  double gamma = 0.0;

  std::size_t size() const { return points.size(); }
  std::size_t interior_size() const { return points.size() < 2 ? 0 : points.size() - 2; }

  /// Physical position of node i.
  double x_at(std::size_t i) const {
    return coordinate == Coordinate::physical_x
               ? points[i]
               : physical_coordinate(points[i], Deformation{gamma});
  }

  /// dx/d(coordinate) at node i: 1 on x-grids, 1 + gamma x on s-grids.
  double jacobian_at(std::size_t i) const {
    return coordinate == Coordinate::physical_x ? 1.0 : std::exp(gamma * points[i]);
  }

  std::vector<double> physical_points() const {
    std::vector<double> xs(points.size());
    for (std::size_t i = 0; i < xs.size(); ++i) xs[i] = x_at(i);
    return xs;
  }

  bool same_as(const Grid& other) const {
    return coordinate == other.coordinate && points.size() == other.points.size() &&
           spacing == other.spacing && gamma == other.gamma &&
           (points.empty() || (points.front() == other.points.front() &&
                               points.back() == other.points.back()));
  }
};

namespace detail {

inline Grid uniform_grid(Coordinate c, double end, std::size_t n_points, double gamma) {
  require(n_points >= 3, "grid needs at least 3 points");
  Grid g;
  g.coordinate = c;
  g.gamma = gamma;
  g.spacing = end / static_cast<double>(n_points - 1);
  g.points.resize(n_points);
  for (std::size_t i = 0; i < n_points; ++i) g.points[i] = g.spacing * static_cast<double>(i);
  g.points.back() = end;
  return g;
}

}  // namespace detail

/// Uniform grid on [0, L] with n_points nodes (walls included).
inline Grid make_x_grid(const PhysicalParams& p, std::size_t n_points) {
  p.validate();
  return detail::uniform_grid(Coordinate::physical_x, p.length, n_points, p.gamma);
}

/// Uniform grid on [0, ln(1 + gamma L)/gamma] with n_points nodes.
inline Grid make_s_grid(const PhysicalParams& p, std::size_t n_points) {
  p.validate();
  return detail::uniform_grid(Coordinate::deformed_s,
                              deformed_coordinate(p.length, p.deformation()), n_points,
                              p.gamma);
}

}  // namespace pdm
