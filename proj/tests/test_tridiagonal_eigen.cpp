#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include <gtest/gtest.h>

#include "pdm/tridiagonal_eigen.hpp"

namespace pdm {
namespace {

double residual(const std::vector<double>& d, const std::vector<double>& e, const std::vector<double>& v,
                double lambda) {
  double r = 0.0;
  for (std::size_t i = 0; i < d.size(); ++i) {
    double t = (d[i] - lambda) * v[i];
    if (i > 0) t += e[i - 1] * v[i - 1];
    if (i + 1 < d.size()) t += e[i] * v[i + 1];
    r += t * t;
  }
  return std::sqrt(r);
}

double inf_norm(const std::vector<double>& d, const std::vector<double>& e) {
  double n = 0.0;
  for (std::size_t i = 0; i < d.size(); ++i)
    n = std::max(n, std::abs(d[i]) + (i > 0 ? std::abs(e[i - 1]) : 0.0) + (i + 1 < d.size() ? std::abs(e[i]) : 0.0));
  return n;
}

TEST(TridiagonalEigen, ThreePointLaplacian) {
  const std::vector<double> d{2, 2, 2}, e{-1, -1};
  const auto r = eigen_symmetric_tridiagonal(d, e, 3);
  EXPECT_NEAR(r.values[0], 2.0 - std::sqrt(2.0), 1e-15);
  EXPECT_NEAR(r.values[1], 2.0, 1e-15);
  EXPECT_NEAR(r.values[2], 2.0 + std::sqrt(2.0), 1e-15);
  // (1, sqrt2, 1)/2 for the lowest, sign convention positive first entry.
  EXPECT_NEAR(r.vectors[0][0], 0.5, 1e-14);
  EXPECT_NEAR(r.vectors[0][1], std::sqrt(0.5), 1e-14);
  EXPECT_NEAR(r.vectors[0][2], 0.5, 1e-14);
  EXPECT_GT(r.vectors[1][0], 0.0);
}

TEST(TridiagonalEigen, DiagonalIsSorted) {
  const std::vector<double> d{3.0, -1.0, 7.5, 0.25, 2.0}, e(4, 0.0);
  const auto r = eigen_symmetric_tridiagonal(d, e, 5);
  std::vector<double> sorted = d;
  std::sort(sorted.begin(), sorted.end());
  for (std::size_t i = 0; i < 5; ++i) EXPECT_NEAR(r.values[i], sorted[i], 1e-14);
  const auto one = eigen_symmetric_tridiagonal(std::vector<double>{4.0}, std::vector<double>{}, 1);
  EXPECT_NEAR(one.values[0], 4.0, 1e-15);
  EXPECT_EQ(one.vectors[0][0], 1.0);
}

TEST(TridiagonalEigen, LaplacianSpectrumClosedForm) {
  const std::size_t n = 500;
  const std::vector<double> d(n, 2.0), e(n - 1, -1.0);
  const auto r = eigen_symmetric_tridiagonal(d, e, 20);
  for (std::size_t j = 0; j < 20; ++j) {
    const double exact = 2.0 - 2.0 * std::cos((j + 1) * std::numbers::pi / (n + 1));
    EXPECT_LE(std::abs(r.values[j] - exact), 1e-14 * 4.0 + 1e-13 * exact);
  }
}

TEST(TridiagonalEigen, ResidualsAndOrthogonalityOnRandomMatrices) {
  std::mt19937 rng(99);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t n = 10 + 13 * trial;
    std::vector<double> d(n), e(n - 1);
    for (auto& x : d) x = 5.0 * u(rng);
    for (auto& x : e) x = u(rng);
    const std::size_t k = std::min<std::size_t>(n, 12);
    const auto r = eigen_symmetric_tridiagonal(d, e, k);
    const double tn = inf_norm(d, e);
    for (std::size_t i = 0; i < k; ++i) {
      if (i > 0) EXPECT_GE(r.values[i], r.values[i - 1]);
      EXPECT_LE(residual(d, e, r.vectors[i], r.values[i]), 1e-10 * tn);
      for (std::size_t j = 0; j <= i; ++j) {
        double dot = 0.0;
        for (std::size_t q = 0; q < n; ++q) dot += r.vectors[i][q] * r.vectors[j][q];
        EXPECT_NEAR(dot, i == j ? 1.0 : 0.0, 1e-9);
      }
    }
  }
}

TEST(TridiagonalEigen, ZeroEigenvalueAndDeterminism) {
  // Zero diagonal, odd size: exact zero in the middle of a +- paired spectrum.
  const std::vector<double> d(31, 0.0), e(30, 1.0);
  const auto a = eigen_symmetric_tridiagonal(d, e, 31);
  const auto b = eigen_symmetric_tridiagonal(d, e, 31);
  EXPECT_NEAR(a.values[15], 0.0, 1e-14);
  for (std::size_t i = 0; i < 31; ++i) {
    EXPECT_NEAR(a.values[i], -a.values[30 - i], 1e-14);
    EXPECT_EQ(a.values[i], b.values[i]);
    EXPECT_EQ(a.vectors[i], b.vectors[i]);
  }
}

TEST(TridiagonalEigen, Errors) {
  EXPECT_THROW(eigen_symmetric_tridiagonal(std::vector<double>{1, 2}, std::vector<double>{}, 1), ValidationError);
  EXPECT_THROW(eigen_symmetric_tridiagonal(std::vector<double>{1, 2}, std::vector<double>{0.5}, 3), ValidationError);
  EXPECT_THROW(eigen_symmetric_tridiagonal(std::vector<double>{}, std::vector<double>{}, 1), ValidationError);
  TridiagonalEigenOptions tight;
  tight.max_bisection_steps = 3;
  try {
    eigen_symmetric_tridiagonal(std::vector<double>{2, 2, 2}, std::vector<double>{-1, -1}, 2, tight);
    FAIL() << "expected ConvergenceError";
  } catch (const ConvergenceError& err) {
    EXPECT_EQ(err.index(), 0u);
  }
}

}  // namespace
}  // namespace pdm
