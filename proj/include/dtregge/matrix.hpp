#pragma once

#include <cassert>
#include <cstddef>
#include <initializer_list>
#include <stdexcept>
#include <utility>
#include <vector>

#include "dtregge/numeric.hpp"

namespace dtregge {

/// Dense row-major matrix over an exact (or high-precision) scalar type.
template <class T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, T(0)) {}
  Matrix(std::initializer_list<std::initializer_list<T>> init) {
    rows_ = init.size();
    cols_ = rows_ ? init.begin()->size() : 0;
    data_.reserve(rows_ * cols_);
    for (const auto& row : init) {
      if (row.size() != cols_) throw std::invalid_argument("ragged matrix initializer");
      for (const auto& x : row) data_.push_back(x);
    }
  }

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = T(1);
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  T& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const T& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  Matrix transpose() const {
    Matrix t(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
      for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
    return t;
  }

  Matrix columns(const std::vector<int>& idx) const {
    Matrix m(rows_, idx.size());
    for (std::size_t r = 0; r < rows_; ++r)
      for (std::size_t c = 0; c < idx.size(); ++c) m(r, c) = (*this)(r, static_cast<std::size_t>(idx[c]));
    return m;
  }

  Matrix principal(const std::vector<int>& idx) const {
    Matrix m(idx.size(), idx.size());
    for (std::size_t r = 0; r < idx.size(); ++r)
      for (std::size_t c = 0; c < idx.size(); ++c)
        m(r, c) = (*this)(static_cast<std::size_t>(idx[r]), static_cast<std::size_t>(idx[c]));
    return m;
  }

  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols_ != b.rows_) throw std::invalid_argument("matrix product shape mismatch");
    Matrix p(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        if (scalar_traits<T>::is_zero(a(i, k))) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) p(i, j) += a(i, k) * b(k, j);
      }
    return p;
  }
  friend Matrix operator+(const Matrix& a, const Matrix& b) {
    Matrix s = a;
    for (std::size_t i = 0; i < s.data_.size(); ++i) s.data_[i] += b.data_[i];
    return s;
  }
  friend Matrix operator*(const T& k, const Matrix& a) {
    Matrix s = a;
    for (auto& x : s.data_) x *= k;
    return s;
  }
  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

  bool is_skew() const {
    if (rows_ != cols_) return false;
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j)
        if (!((*this)(i, j) == -(*this)(j, i))) return false;
    return true;
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
};

/// Reduced row echelon form; returns pivot columns. Works over any field type.
template <class T>
std::vector<int> rref_in_place(Matrix<T>& m) {
  using tr = scalar_traits<T>;
  std::vector<int> pivots;
  std::size_t row = 0;
  for (std::size_t col = 0; col < m.cols() && row < m.rows(); ++col) {
    std::size_t best = m.rows();
    if constexpr (tr::exact) {
      for (std::size_t r = row; r < m.rows(); ++r)
        if (!tr::is_zero(m(r, col))) {
          best = r;
          break;
        }
    } else {
      T best_abs = 0;
      for (std::size_t r = row; r < m.rows(); ++r) {
        T a = tr::abs(m(r, col));
        if (a > best_abs) {
          best_abs = a;
          best = r;
        }
      }
      if (best != m.rows() && tr::is_zero(best_abs)) best = m.rows();
    }
    if (best == m.rows()) continue;
    if (best != row)
      for (std::size_t c = 0; c < m.cols(); ++c) std::swap(m(row, c), m(best, c));
    T inv = T(1) / m(row, col);
    for (std::size_t c = 0; c < m.cols(); ++c) m(row, c) *= inv;
    for (std::size_t r = 0; r < m.rows(); ++r) {
      if (r == row || tr::is_zero(m(r, col))) continue;
      T f = m(r, col);
      for (std::size_t c = 0; c < m.cols(); ++c) m(r, c) -= f * m(row, c);
    }
    pivots.push_back(static_cast<int>(col));
    ++row;
  }
  return pivots;
}

template <class T>
std::size_t rank(Matrix<T> m) {
  return rref_in_place(m).size();
}

/// Determinant by Gaussian elimination over a field.
template <class T>
T determinant(Matrix<T> m) {
  using tr = scalar_traits<T>;
  if (m.rows() != m.cols()) throw std::invalid_argument("determinant of non-square matrix");
  const std::size_t n = m.rows();
  T det = T(1);
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = n;
    for (std::size_t r = col; r < n; ++r)
      if (!tr::is_zero(m(r, col))) {
        piv = r;
        break;
      }
    if (piv == n) return T(0);
    if (piv != col) {
      for (std::size_t c = 0; c < n; ++c) std::swap(m(col, c), m(piv, c));
      det = -det;
    }
    det *= m(col, col);
    T inv = T(1) / m(col, col);
    for (std::size_t r = col + 1; r < n; ++r) {
      if (tr::is_zero(m(r, col))) continue;
      T f = m(r, col) * inv;
      for (std::size_t c = col; c < n; ++c) m(r, c) -= f * m(col, c);
    }
  }
  return det;
}

/// Fraction-free (Bareiss) determinant of an integer matrix.
inline Integer determinant_bareiss(Matrix<Integer> m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("determinant of non-square matrix");
  const std::size_t n = m.rows();
  if (n == 0) return 1;
  int sign = 1;
  Integer prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m(k, k) == 0) {
      std::size_t piv = k + 1;
      while (piv < n && m(piv, k) == 0) ++piv;
      if (piv == n) return 0;
      for (std::size_t c = 0; c < n; ++c) std::swap(m(k, c), m(piv, c));
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j) m(i, j) = (m(i, j) * m(k, k) - m(i, k) * m(k, j)) / prev;
    prev = m(k, k);
  }
  return sign * m(n - 1, n - 1);
}

template <class T>
Matrix<T> inverse(const Matrix<T>& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("inverse of non-square matrix");
  const std::size_t n = m.rows();
  if (n == 0) return m;
  Matrix<T> aug(n, 2 * n);
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < n; ++c) aug(r, c) = m(r, c);
    aug(r, n + r) = T(1);
  }
  auto piv = rref_in_place(aug);
  if (piv.size() < n || piv[n - 1] != static_cast<int>(n - 1)) throw std::domain_error("singular matrix");
  Matrix<T> inv(n, n);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) inv(r, c) = aug(r, n + c);
  return inv;
}

template <class T>
Matrix<Rational> to_rational(const Matrix<T>& m) {
  Matrix<Rational> out(m.rows(), m.cols());
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c) out(r, c) = Rational(m(r, c));
  return out;
}

}  // namespace dtregge
