#pragma once

// Small dense exact matrices.

#include "crn1d/rational.hpp"

#include <cstddef>
#include <stdexcept>
#include <utility>
#include <vector>

namespace crn1d {

/// Row-major dense matrix over any exact ring-like scalar.
template <typename T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, const T& fill = T(0))
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }

  T& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const T& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  std::vector<T> row(std::size_t r) const {
    return std::vector<T>(data_.begin() + static_cast<std::ptrdiff_t>(r * cols_),
                          data_.begin() + static_cast<std::ptrdiff_t>((r + 1) * cols_));
  }
  std::vector<T> column(std::size_t c) const {
    std::vector<T> out;
    out.reserve(rows_);
    for (std::size_t r = 0; r < rows_; ++r) out.push_back((*this)(r, c));
    return out;
  }

  void swap_rows(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t c = 0; c < cols_; ++c) std::swap((*this)(a, c), (*this)(b, c));
  }

  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols_ != b.rows_) throw std::invalid_argument("matrix product dimension mismatch");
    Matrix out(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k)
        for (std::size_t j = 0; j < b.cols_; ++j) out(i, j) += a(i, k) * b(k, j);
    return out;
  }

  bool is_zero() const {
    for (const auto& v : data_)
      if (!(v == T(0))) return false;
    return true;
  }

  friend bool operator==(const Matrix&, const Matrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
};

using RationalMatrix = Matrix<Rational>;

/// Reduced row-echelon form with leftmost-column pivoting; zero rows dropped.
inline RationalMatrix rref(RationalMatrix m) {
  std::size_t pivot_row = 0;
  for (std::size_t c = 0; c < m.cols() && pivot_row < m.rows(); ++c) {
    std::size_t r = pivot_row;
    while (r < m.rows() && m(r, c).sign() == 0) ++r;
    if (r == m.rows()) continue;
    m.swap_rows(r, pivot_row);
    Rational inv = 1 / m(pivot_row, c);
    for (std::size_t k = 0; k < m.cols(); ++k) m(pivot_row, k) *= inv;
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (i == pivot_row || m(i, c).sign() == 0) continue;
      Rational f = m(i, c);
      for (std::size_t k = 0; k < m.cols(); ++k) m(i, k) -= f * m(pivot_row, k);
    }
    ++pivot_row;
  }
  RationalMatrix out(pivot_row, m.cols());
  for (std::size_t i = 0; i < pivot_row; ++i)
    for (std::size_t k = 0; k < m.cols(); ++k) out(i, k) = m(i, k);
  return out;
}

inline std::size_t rank(const RationalMatrix& m) { return rref(m).rows(); }

inline RationalMatrix transpose(const RationalMatrix& m) {
  RationalMatrix t(m.cols(), m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) t(j, i) = m(i, j);
  return t;
}

/// Basis of {v : v * m = 0} (rows), in reduced row-echelon form.
inline RationalMatrix left_null_space(const RationalMatrix& m) {
  // Null space of m^T, read off its RREF, then canonicalised.
  RationalMatrix mt = transpose(m);
  RationalMatrix r = rref(mt);
  const std::size_t n = mt.cols();
  std::vector<std::size_t> pivots;
  std::vector<bool> is_pivot(n, false);
  for (std::size_t i = 0; i < r.rows(); ++i) {
    std::size_t c = 0;
    while (r(i, c).sign() == 0) ++c;
    pivots.push_back(c);
    is_pivot[c] = true;
  }
  std::vector<std::vector<Rational>> basis;
  for (std::size_t free = 0; free < n; ++free) {
    if (is_pivot[free]) continue;
    std::vector<Rational> v(n, Rational(0));
    v[free] = 1;
    for (std::size_t i = 0; i < pivots.size(); ++i) v[pivots[i]] = -r(i, free);
    basis.push_back(std::move(v));
  }
  RationalMatrix out(basis.size(), n);
  for (std::size_t i = 0; i < basis.size(); ++i)
    for (std::size_t k = 0; k < n; ++k) out(i, k) = basis[i][k];
  return basis.empty() ? out : rref(out);
}

/// Fraction-free (Bareiss) determinant; every division is exact in any
/// integral domain, so this works for rationals and polynomials alike.
template <typename T>
T determinant(Matrix<T> m) {
  const std::size_t n = m.rows();
  if (n != m.cols()) throw std::invalid_argument("determinant of a non-square matrix");
  if (n == 0) return T(1);
  bool negate = false;
  T prev(1);
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m(k, k) == T(0)) {
      std::size_t r = k + 1;
      while (r < n && m(r, k) == T(0)) ++r;
      if (r == n) return T(0);
      m.swap_rows(k, r);
      negate = !negate;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j) m(i, j) = (m(k, k) * m(i, j) - m(i, k) * m(k, j)) / prev;
    prev = m(k, k);
  }
  T det = m(n - 1, n - 1);
  return negate ? T(-det) : det;
}

}  // namespace crn1d
