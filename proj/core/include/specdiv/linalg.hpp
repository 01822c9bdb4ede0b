#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "specdiv/cyclotomic.hpp"
#include "specdiv/errors.hpp"
#include "specdiv/rational.hpp"

namespace specdiv {

inline bool k_is_zero(const Rat& v) { return v == 0; }
inline bool k_is_zero(const CycNumber& v) { return v.is_zero(); }
inline Rat k_inverse(const Rat& v) { return Rat(1) / v; }
inline CycNumber k_inverse(const CycNumber& v) { return v.inverse(); }

/// Dense matrix over an exact scalar (Rat or CycNumber).
template <class K>
struct Matrix {
  long rows = 0;
  long cols = 0;
  std::vector<K> a;

  Matrix() = default;
  Matrix(long r, long c) : rows(r), cols(c), a(r * c) {}

  K& at(long i, long j) { return a[i * cols + j]; }
  const K& at(long i, long j) const { return a[i * cols + j]; }
};

template <class K>
Matrix<K> matmul(const Matrix<K>& x, const Matrix<K>& y) {
  if (x.cols != y.rows) throw InternalError("matmul shape mismatch");
  Matrix<K> out(x.rows, y.cols);
  for (long i = 0; i < x.rows; ++i) {
    for (long k = 0; k < x.cols; ++k) {
      const K& v = x.at(i, k);
      if (k_is_zero(v)) continue;
      for (long j = 0; j < y.cols; ++j) {
        if (k_is_zero(y.at(k, j))) continue;
        out.at(i, j) = out.at(i, j) + v * y.at(k, j);
      }
    }
  }
  return out;
}

template <class K>
struct Echelon {
  Matrix<K> rref;
  std::vector<long> pivot_cols;
  long rank() const { return static_cast<long>(pivot_cols.size()); }
};

/// Reduced row echelon form by exact Gauss-Jordan elimination.
template <class K>
Echelon<K> echelonize(Matrix<K> m) {
  Echelon<K> out;
  long row = 0;
  for (long col = 0; col < m.cols && row < m.rows; ++col) {
    long piv = -1;
    for (long r = row; r < m.rows; ++r) {
      if (!k_is_zero(m.at(r, col))) {
        piv = r;
        break;
      }
    }
    if (piv < 0) continue;
    if (piv != row) {
      for (long j = 0; j < m.cols; ++j) std::swap(m.at(piv, j), m.at(row, j));
    }
    K inv = k_inverse(m.at(row, col));
    for (long j = col; j < m.cols; ++j) m.at(row, j) = m.at(row, j) * inv;
    for (long r = 0; r < m.rows; ++r) {
      if (r == row || k_is_zero(m.at(r, col))) continue;
      K f = m.at(r, col);
      for (long j = col; j < m.cols; ++j) {
        m.at(r, j) = m.at(r, j) - f * m.at(row, j);
      }
    }
    out.pivot_cols.push_back(col);
    ++row;
  }
  out.rref = std::move(m);
  return out;
}

/// Basis of the right kernel, one vector per free column, in column
/// order. `one` supplies the multiplicative unit of K.
template <class K>
std::vector<std::vector<K>> kernel_basis(const Echelon<K>& e, const K& one) {
  const Matrix<K>& m = e.rref;
  std::vector<bool> is_pivot(m.cols, false);
  for (long c : e.pivot_cols) is_pivot[c] = true;
  std::vector<std::vector<K>> basis;
  for (long free = 0; free < m.cols; ++free) {
    if (is_pivot[free]) continue;
    std::vector<K> v(m.cols);
    for (long r = 0; r < e.rank(); ++r) {
      v[e.pivot_cols[r]] = -m.at(r, free);
    }
    v[free] = one;
    basis.push_back(std::move(v));
  }
  return basis;
}

/// Solves A x = b. Returns std::nullopt when inconsistent. Free
/// variables are set to zero, so the solution is deterministic.
template <class K>
std::optional<std::vector<K>> solve(const Matrix<K>& A,
                                    const std::vector<K>& b) {
  if (static_cast<long>(b.size()) != A.rows) {
    throw InternalError("solve: dimension mismatch");
  }
  Matrix<K> aug(A.rows, A.cols + 1);
  for (long i = 0; i < A.rows; ++i) {
    for (long j = 0; j < A.cols; ++j) aug.at(i, j) = A.at(i, j);
    aug.at(i, A.cols) = b[i];
  }
  Echelon<K> e = echelonize(std::move(aug));
  for (long c : e.pivot_cols) {
    if (c == A.cols) return std::nullopt;  // pivot in the rhs column
  }
  std::vector<K> x(A.cols);
  for (long r = 0; r < e.rank(); ++r) {
    x[e.pivot_cols[r]] = e.rref.at(r, A.cols);
  }
  return x;
}

}  // namespace specdiv
