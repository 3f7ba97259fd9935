#pragma once

#include <algorithm>
#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "splinezero/errors.hpp"
#include "splinezero/rational.hpp"

namespace splinezero {

/// Dense row-major matrix over an exact scalar.
template <class T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), entries_(rows * cols, T(0)) {}
  Matrix(std::size_t rows, std::size_t cols, std::vector<T> entries)
      : rows_(rows), cols_(cols), entries_(std::move(entries)) {
    if (entries_.size() != rows_ * cols_) {
      throw DimensionError("matrix entry count does not match shape");
    }
  }
  Matrix(std::initializer_list<std::initializer_list<T>> rows) {
    rows_ = rows.size();
    cols_ = rows_ == 0 ? 0 : rows.begin()->size();
    for (const auto& row : rows) {
      if (row.size() != cols_) throw DimensionError("ragged matrix literal");
      entries_.insert(entries_.end(), row.begin(), row.end());
    }
  }

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = T(1);
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool is_square() const { return rows_ == cols_; }
  std::span<const T> entries() const { return entries_; }

  T& operator()(std::size_t r, std::size_t c) { return entries_[r * cols_ + c]; }
  const T& operator()(std::size_t r, std::size_t c) const {
    return entries_[r * cols_ + c];
  }

  std::vector<T> column(std::size_t c) const {
    std::vector<T> out;
    out.reserve(rows_);
    for (std::size_t r = 0; r < rows_; ++r) out.push_back((*this)(r, c));
    return out;
  }

  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols_ != b.rows_) throw DimensionError("matrix product shape mismatch");
    Matrix out(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i) {
      for (std::size_t k = 0; k < a.cols_; ++k) {
        if (a(i, k) == T(0)) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) out(i, j) += a(i, k) * b(k, j);
      }
    }
    return out;
  }

  friend bool operator==(const Matrix&, const Matrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> entries_;
};

using RationalMatrix = Matrix<Rational>;
using IntegerMatrix = Matrix<Integer>;

inline std::vector<Rational> operator*(const RationalMatrix& a,
                                       std::span<const Rational> x) {
  if (a.cols() != x.size()) throw DimensionError("matrix-vector shape mismatch");
  std::vector<Rational> out(a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) out[i] += a(i, j) * x[j];
  }
  return out;
}

/// Exact determinant. Each row is first scaled to integers by the lcm of its
/// denominators, then Bareiss fraction-free elimination runs on the integer
/// matrix, where every division is exact. The row scalings are divided out
/// at the end.
inline Rational determinant(const RationalMatrix& a) {
  if (!a.is_square()) throw DimensionError("determinant of a non-square matrix");
  const std::size_t n = a.rows();
  if (n == 0) return Rational(1);

  std::vector<Integer> m(n * n);
  Integer scale = 1;
  for (std::size_t i = 0; i < n; ++i) {
    Integer row_lcm = 1;
    for (std::size_t j = 0; j < n; ++j) {
      Integer d = a(i, j).denominator();
      mpz_lcm(row_lcm.get_mpz_t(), row_lcm.get_mpz_t(), d.get_mpz_t());
    }
    for (std::size_t j = 0; j < n; ++j) {
      const Rational& e = a(i, j);
      m[i * n + j] = e.numerator() * (row_lcm / e.denominator());
    }
    scale *= row_lcm;
  }
  auto at = [&](std::size_t r, std::size_t c) -> Integer& { return m[r * n + c]; };

  int sign = 1;
  Integer previous = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (at(k, k) == 0) {
      std::size_t swap_row = k + 1;
      while (swap_row < n && at(swap_row, k) == 0) ++swap_row;
      if (swap_row == n) return Rational(0);
      for (std::size_t c = 0; c < n; ++c) std::swap(at(k, c), at(swap_row, c));
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        Integer t = at(k, k) * at(i, j) - at(i, k) * at(k, j);
        mpz_divexact(at(i, j).get_mpz_t(), t.get_mpz_t(), previous.get_mpz_t());
      }
      at(i, k) = 0;
    }
    previous = at(k, k);
  }
  Integer det = at(n - 1, n - 1);
  if (sign < 0) det = -det;
  return Rational(std::move(det), std::move(scale));
}

/// Solves A x = b exactly by Gaussian elimination over the rationals. The
/// result is checked by substituting it back before it is returned.
inline std::vector<Rational> solve(const RationalMatrix& a,
                                   std::span<const Rational> b) {
  if (!a.is_square()) throw DimensionError("solve with a non-square matrix");
  const std::size_t n = a.rows();
  if (b.size() != n) throw DimensionError("right-hand side length mismatch");

  std::vector<std::vector<Rational>> m(n, std::vector<Rational>(n + 1));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) m[i][j] = a(i, j);
    m[i][n] = b[i];
  }
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t pivot = k;
    while (pivot < n && m[pivot][k].is_zero()) ++pivot;
    if (pivot == n) throw SingularMatrixError("matrix is singular");
    std::swap(m[k], m[pivot]);
    const Rational inv = Rational(1) / m[k][k];
    for (std::size_t j = k; j <= n; ++j) m[k][j] *= inv;
    for (std::size_t i = 0; i < n; ++i) {
      if (i == k || m[i][k].is_zero()) continue;
      const Rational f = m[i][k];
      for (std::size_t j = k; j <= n; ++j) m[i][j] -= f * m[k][j];
    }
  }
  std::vector<Rational> x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = m[i][n];

  const auto check = a * std::span<const Rational>(x);
  if (!std::equal(check.begin(), check.end(), b.begin(), b.end())) {
    throw ConsistencyError("solve: back-substitution check failed");
  }
  return x;
}

/// Basis (as columns) of the integer lattice generated by the columns of
/// `vectors` (an s x m integer matrix, s in {1, 2}). Column operations with
/// extended gcds bring the matrix to lower-triangular Hermite-style form;
/// unimodular column operations preserve the generated lattice.
inline IntegerMatrix lattice_basis(const IntegerMatrix& vectors) {
  const std::size_t s = vectors.rows();
  const std::size_t m = vectors.cols();
  if (s < 1 || s > 2) throw DimensionError("lattice_basis supports s in {1, 2}");
  if (m == 0) throw DimensionError("lattice_basis of an empty vector list");
  if (m < s) throw RankError("fewer vectors than dimensions");

  std::vector<std::vector<Integer>> cols(m, std::vector<Integer>(s));
  for (std::size_t c = 0; c < m; ++c) {
    for (std::size_t r = 0; r < s; ++r) cols[c][r] = vectors(r, c);
  }

  for (std::size_t r = 0; r < s; ++r) {
    // Fold every column c > r into column r so that row r of column c is 0.
    for (std::size_t c = r + 1; c < m; ++c) {
      if (cols[c][r] == 0) continue;
      Integer g, x, y;
      mpz_gcdext(g.get_mpz_t(), x.get_mpz_t(), y.get_mpz_t(),
                 cols[r][r].get_mpz_t(), cols[c][r].get_mpz_t());
      const Integer u = cols[r][r] / g;
      const Integer v = cols[c][r] / g;
      // [x y; -v u] has determinant x*u + y*v = 1.
      std::vector<Integer> new_r(s), new_c(s);
      for (std::size_t k = 0; k < s; ++k) {
        new_r[k] = x * cols[r][k] + y * cols[c][k];
        new_c[k] = u * cols[c][k] - v * cols[r][k];
      }
      cols[r] = std::move(new_r);
      cols[c] = std::move(new_c);
    }
    if (cols[r][r] == 0) {
      throw RankError("vectors do not span the ambient space");
    }
    if (cols[r][r] < 0) {
      for (auto& e : cols[r]) e = -e;
    }
  }
  // Reduce the below-diagonal entry into [0, pivot) for a canonical basis.
  if (s == 2) {
    Integer q;
    mpz_fdiv_q(q.get_mpz_t(), cols[0][1].get_mpz_t(), cols[1][1].get_mpz_t());
    cols[0][0] -= q * cols[1][0];
    cols[0][1] -= q * cols[1][1];
  }

  IntegerMatrix basis(s, s);
  for (std::size_t c = 0; c < s; ++c) {
    for (std::size_t r = 0; r < s; ++r) basis(r, c) = cols[c][r];
  }
  return basis;
}

}  // namespace splinezero
