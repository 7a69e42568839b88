#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "pdm/error.hpp"

namespace pdm {

namespace detail {
inline double conj_if_complex(double v) { return v; }
inline std::complex<double> conj_if_complex(std::complex<double> v) { return std::conj(v); }
}  // namespace detail

/// Square matrix with `lower` sub- and `upper` super-diagonals, stored row by
/// row. Entries outside the band read as zero.
template <typename T>
class BandedMatrix {
 public:
  BandedMatrix() = default;
  BandedMatrix(std::size_t n, std::size_t lower, std::size_t upper)
      : n_(n),
        lower_(std::min(lower, n ? n - 1 : 0)),
        upper_(std::min(upper, n ? n - 1 : 0)),
        data_(n * (lower_ + upper_ + 1), T{}) {}

  std::size_t size() const { return n_; }
  std::size_t lower() const { return lower_; }
  std::size_t upper() const { return upper_; }

  bool in_band(std::size_t i, std::size_t j) const {
    return i < n_ && j < n_ && j + lower_ >= i && j <= i + upper_;
  }

  T operator()(std::size_t i, std::size_t j) const {
    return in_band(i, j) ? data_[index(i, j)] : T{};
  }

  /// Writable access; (i, j) must lie inside the band.
  T& at(std::size_t i, std::size_t j) { return data_[index(i, j)]; }

  /// First and one-past-last column of the band in row i.
  std::size_t row_begin(std::size_t i) const { return i > lower_ ? i - lower_ : 0; }
  std::size_t row_end(std::size_t i) const { return std::min(n_, i + upper_ + 1); }

  std::vector<T> apply(std::span<const T> v) const {
    if (v.size() != n_) throw ValidationError("BandedMatrix::apply: dimension mismatch");
    std::vector<T> out(n_, T{});
    for (std::size_t i = 0; i < n_; ++i) {
      T acc{};
      for (std::size_t j = row_begin(i); j < row_end(i); ++j) acc += data_[index(i, j)] * v[j];
      out[i] = acc;
    }
    return out;
  }

  /// Largest entry magnitude.
  double max_norm() const {
    double m = 0.0;
    for (const T& x : data_) m = std::max(m, static_cast<double>(std::abs(x)));
    return m;
  }

  BandedMatrix adjoint() const {
    BandedMatrix out(n_, upper_, lower_);
    for (std::size_t i = 0; i < n_; ++i)
      for (std::size_t j = row_begin(i); j < row_end(i); ++j)
        out.at(j, i) = detail::conj_if_complex(data_[index(i, j)]);
    return out;
  }

  BandedMatrix& operator*=(T s) {
    for (T& x : data_) x *= s;
    return *this;
  }

  /// Adds s to every diagonal entry.
  BandedMatrix& add_diagonal(T s) {
    for (std::size_t i = 0; i < n_; ++i) data_[index(i, i)] += s;
    return *this;
  }

  /// Adds d[i] to diagonal entry i.
  BandedMatrix& add_diagonal(std::span<const T> d) {
    if (d.size() != n_) throw ValidationError("BandedMatrix::add_diagonal: dimension mismatch");
    for (std::size_t i = 0; i < n_; ++i) data_[index(i, i)] += d[i];
    return *this;
  }

  /// diag(left) * this * diag(right).
  BandedMatrix scaled(std::span<const T> left, std::span<const T> right) const {
    BandedMatrix out(*this);
    for (std::size_t i = 0; i < n_; ++i)
      for (std::size_t j = row_begin(i); j < row_end(i); ++j)
        out.data_[index(i, j)] = left[i] * data_[index(i, j)] * right[j];
    return out;
  }

  /// Copy with the value type converted (e.g. real -> complex).
  template <typename U>
  BandedMatrix<U> cast() const {
    BandedMatrix<U> out(n_, lower_, upper_);
    for (std::size_t i = 0; i < n_; ++i)
      for (std::size_t j = row_begin(i); j < row_end(i); ++j)
        out.at(i, j) = static_cast<U>(data_[index(i, j)]);
    return out;
  }

  friend BandedMatrix operator*(const BandedMatrix& a, const BandedMatrix& b) {
    if (a.n_ != b.n_) throw ValidationError("BandedMatrix product: dimension mismatch");
    BandedMatrix out(a.n_, a.lower_ + b.lower_, a.upper_ + b.upper_);
    for (std::size_t i = 0; i < a.n_; ++i)
      for (std::size_t k = a.row_begin(i); k < a.row_end(i); ++k) {
        const T aik = a.data_[a.index(i, k)];
        for (std::size_t j = b.row_begin(k); j < b.row_end(k); ++j)
          out.data_[out.index(i, j)] += aik * b.data_[b.index(k, j)];
      }
    return out;
  }

  friend BandedMatrix operator+(const BandedMatrix& a, const BandedMatrix& b) {
    if (a.n_ != b.n_) throw ValidationError("BandedMatrix sum: dimension mismatch");
    BandedMatrix out(a.n_, std::max(a.lower_, b.lower_), std::max(a.upper_, b.upper_));
    for (const BandedMatrix* m : {&a, &b})
      for (std::size_t i = 0; i < m->n_; ++i)
        for (std::size_t j = m->row_begin(i); j < m->row_end(i); ++j)
          out.data_[out.index(i, j)] += m->data_[m->index(i, j)];
    return out;
  }

  friend BandedMatrix operator-(const BandedMatrix& a, const BandedMatrix& b) {
    BandedMatrix neg(b);
    neg *= T{-1};
    return a + neg;
  }

 private:
  std::size_t index(std::size_t i, std::size_t j) const {
    return i * (lower_ + upper_ + 1) + (j + lower_ - i);
  }

  std::size_t n_ = 0;
  std::size_t lower_ = 0;
  std::size_t upper_ = 0;
  std::vector<T> data_;
};

/// LU factorisation with partial pivoting of a banded matrix, kept in band
/// form (U gains `lower` extra super-diagonals from row interchanges).
///
/// With `tiny_pivot > 0` exactly-zero or smaller pivots are replaced by
/// tiny_pivot instead of raising SingularSystemError; inverse iteration
/// relies on this.
template <typename T>
class BandedLU {
 public:
  explicit BandedLU(const BandedMatrix<T>& a, double tiny_pivot = 0.0)
      : work_(a.size(), a.lower(), a.lower() + a.upper()), pivots_(a.size()), kl_(a.lower()) {
    const std::size_t n = a.size();
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = a.row_begin(i); j < a.row_end(i); ++j) work_.at(i, j) = a(i, j);

    const std::size_t ku = work_.upper();
    for (std::size_t k = 0; k < n; ++k) {
      const std::size_t last_row = std::min(n - 1, k + kl_);
      const std::size_t last_col = std::min(n - 1, k + ku);
      std::size_t p = k;
      double best = std::abs(work_(k, k));
      for (std::size_t i = k + 1; i <= last_row; ++i) {
        const double v = std::abs(work_(i, k));
        if (v > best) {
          best = v;
          p = i;
        }
      }
      pivots_[k] = p;
      if (p != k)
        for (std::size_t j = k; j <= last_col; ++j) std::swap(work_.at(k, j), work_.at(p, j));
      if (!(std::abs(work_(k, k)) > tiny_pivot)) {
        if (tiny_pivot > 0.0) {
          work_.at(k, k) = T(tiny_pivot);
        } else {
          throw SingularSystemError("BandedLU: singular pivot at row " + std::to_string(k));
        }
      }
      const T pivot = work_(k, k);
      for (std::size_t i = k + 1; i <= last_row; ++i) {
        const T m = work_(i, k) / pivot;
        work_.at(i, k) = m;
        if (m == T{}) continue;
        for (std::size_t j = k + 1; j <= last_col; ++j) work_.at(i, j) -= m * work_(k, j);
      }
    }
  }

  std::size_t size() const { return work_.size(); }

  /// Solves A x = b in place.
  void solve_in_place(std::span<T> b) const {
    const std::size_t n = work_.size();
    if (b.size() != n) throw ValidationError("BandedLU::solve: dimension mismatch");
    for (std::size_t k = 0; k < n; ++k) {
      if (pivots_[k] != k) std::swap(b[k], b[pivots_[k]]);
      const std::size_t last_row = std::min(n - 1, k + kl_);
      for (std::size_t i = k + 1; i <= last_row; ++i) b[i] -= work_(i, k) * b[k];
    }
    const std::size_t ku = work_.upper();
    for (std::size_t ii = n; ii-- > 0;) {
      T acc = b[ii];
      const std::size_t last_col = std::min(n - 1, ii + ku);
      for (std::size_t j = ii + 1; j <= last_col; ++j) acc -= work_(ii, j) * b[j];
      b[ii] = acc / work_(ii, ii);
    }
  }

  std::vector<T> solve(std::span<const T> b) const {
    std::vector<T> x(b.begin(), b.end());
    solve_in_place(x);
    return x;
  }

 private:
  BandedMatrix<T> work_;
  std::vector<std::size_t> pivots_;
  std::size_t kl_;
};

}  // namespace pdm
