#pragma once

// Dense exact linear algebra over Q, over the embedded field E0, and over Z.

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "vorunits/scalar.hpp"

namespace vor {

inline bool is_zero(const Rational& q) { return sgn(q) == 0; }
inline bool is_zero(const Integer& z) { return sgn(z) == 0; }
inline bool is_zero(const Scalar& s) { return s.is_zero(); }

template <class T>
using Vec = std::vector<T>;

template <class T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), a_(rows * cols, T(0)) {}

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = T(1);
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  T& operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
  const T& operator()(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }
  const std::vector<T>& data() const { return a_; }

  Vec<T> row(std::size_t i) const { return Vec<T>(a_.begin() + i * cols_, a_.begin() + (i + 1) * cols_); }
  Vec<T> col(std::size_t j) const {
    Vec<T> v(rows_);
    for (std::size_t i = 0; i < rows_; ++i) v[i] = (*this)(i, j);
    return v;
  }

  Matrix transpose() const {
    Matrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  bool is_zero() const {
    for (const auto& x : a_)
      if (!vor::is_zero(x)) return false;
    return true;
  }

  friend bool operator==(const Matrix& x, const Matrix& y) {
    return x.rows_ == y.rows_ && x.cols_ == y.cols_ && x.a_ == y.a_;
  }
  friend bool operator!=(const Matrix& x, const Matrix& y) { return !(x == y); }

  friend Matrix operator*(const Matrix& x, const Matrix& y) {
    if (x.cols_ != y.rows_) throw Error(ErrorKind::DimensionMismatch, "matrix product shape");
    Matrix r(x.rows_, y.cols_);
    for (std::size_t i = 0; i < x.rows_; ++i)
      for (std::size_t k = 0; k < x.cols_; ++k) {
        const T& xik = x(i, k);
        if (vor::is_zero(xik)) continue;
        for (std::size_t j = 0; j < y.cols_; ++j) r(i, j) += xik * y(k, j);
      }
    return r;
  }
  friend Matrix operator+(Matrix x, const Matrix& y) {
    for (std::size_t k = 0; k < x.a_.size(); ++k) x.a_[k] += y.a_[k];
    return x;
  }
  friend Matrix operator-(Matrix x, const Matrix& y) {
    for (std::size_t k = 0; k < x.a_.size(); ++k) x.a_[k] -= y.a_[k];
    return x;
  }
  friend Vec<T> operator*(const Matrix& x, const Vec<T>& v) {
    if (x.cols_ != v.size()) throw Error(ErrorKind::DimensionMismatch, "matrix-vector shape");
    Vec<T> r(x.rows_, T(0));
    for (std::size_t i = 0; i < x.rows_; ++i)
      for (std::size_t j = 0; j < x.cols_; ++j)
        if (!vor::is_zero(v[j])) r[i] += x(i, j) * v[j];
    return r;
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> a_;
};

using QMatrix = Matrix<Rational>;
using EMatrix = Matrix<Scalar>;
using ZMatrix = Matrix<Integer>;
using QVec = Vec<Rational>;
using EVec = Vec<Scalar>;
using ZVec = Vec<Integer>;

template <class T>
T dot(const Vec<T>& a, const Vec<T>& b) {
  T s(0);
  for (std::size_t i = 0; i < a.size(); ++i)
    if (!is_zero(a[i]) && !is_zero(b[i])) s += a[i] * b[i];
  return s;
}

/// Row-reduces in place to reduced echelon form; returns pivot columns.
template <class T>
std::vector<std::size_t> rref(Matrix<T>& m) {
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t col = 0; col < m.cols() && row < m.rows(); ++col) {
    std::size_t piv = row;
    while (piv < m.rows() && is_zero(m(piv, col))) ++piv;
    if (piv == m.rows()) continue;
    if (piv != row)
      for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(piv, j), m(row, j));
    T inv = T(1) / m(row, col);
    for (std::size_t j = col; j < m.cols(); ++j)
      if (!is_zero(m(row, j))) m(row, j) *= inv;
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (i == row || is_zero(m(i, col))) continue;
      T f = m(i, col);
      for (std::size_t j = col; j < m.cols(); ++j)
        if (!is_zero(m(row, j))) m(i, j) -= f * m(row, j);
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

template <class T>
std::size_t rank(Matrix<T> m) {
  return rref(m).size();
}

/// Basis of {x : m x = 0}.
template <class T>
std::vector<Vec<T>> nullspace(Matrix<T> m) {
  auto piv = rref(m);
  std::vector<bool> is_piv(m.cols(), false);
  for (auto p : piv) is_piv[p] = true;
  std::vector<Vec<T>> basis;
  for (std::size_t free = 0; free < m.cols(); ++free) {
    if (is_piv[free]) continue;
    Vec<T> v(m.cols(), T(0));
    v[free] = T(1);
    for (std::size_t r = 0; r < piv.size(); ++r) v[piv[r]] = -m(r, free);
    basis.push_back(std::move(v));
  }
  return basis;
}

/// Some solution of a x = b, if one exists.
template <class T>
std::optional<Vec<T>> solve(const Matrix<T>& a, const Vec<T>& b) {
  Matrix<T> aug(a.rows(), a.cols() + 1);
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) aug(i, j) = a(i, j);
    aug(i, a.cols()) = b[i];
  }
  auto piv = rref(aug);
  if (!piv.empty() && piv.back() == a.cols()) return std::nullopt;
  Vec<T> x(a.cols(), T(0));
  for (std::size_t r = 0; r < piv.size(); ++r) x[piv[r]] = aug(r, a.cols());
  return x;
}

template <class T>
std::optional<Matrix<T>> inverse(const Matrix<T>& a) {
  const std::size_t n = a.rows();
  if (a.cols() != n) throw Error(ErrorKind::DimensionMismatch, "inverse of non-square matrix");
  Matrix<T> aug(n, 2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug(i, j) = a(i, j);
    aug(i, n + i) = T(1);
  }
  auto piv = rref(aug);
  if (piv.size() < n || piv[n - 1] != n - 1) return std::nullopt;
  Matrix<T> inv(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) inv(i, j) = aug(i, n + j);
  return inv;
}

template <class T>
T determinant(Matrix<T> m) {
  const std::size_t n = m.rows();
  T det(1);
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    while (piv < n && is_zero(m(piv, col))) ++piv;
    if (piv == n) return T(0);
    if (piv != col) {
      for (std::size_t j = 0; j < n; ++j) std::swap(m(piv, j), m(col, j));
      det = -det;
    }
    det *= m(col, col);
    T inv = T(1) / m(col, col);
    for (std::size_t i = col + 1; i < n; ++i) {
      if (is_zero(m(i, col))) continue;
      T f = m(i, col) * inv;
      for (std::size_t j = col; j < n; ++j) m(i, j) -= f * m(col, j);
    }
  }
  return det;
}

/// Positive definiteness of a symmetric matrix by exact symmetric elimination.
/// With allow_semidefinite, zero pivots are accepted when their row vanishes.
template <class T>
bool is_positive_definite(Matrix<T> m, bool allow_semidefinite = false) {
  const std::size_t n = m.rows();
  for (std::size_t k = 0; k < n; ++k) {
    int s = sign_of(Scalar(m(k, k)));
    if (s < 0) return false;
    if (s == 0) {
      if (!allow_semidefinite) return false;
      for (std::size_t j = k + 1; j < n; ++j)
        if (!is_zero(m(k, j))) return false;
      continue;
    }
    T inv = T(1) / m(k, k);
    for (std::size_t i = k + 1; i < n; ++i) {
      if (is_zero(m(i, k))) continue;
      T f = m(i, k) * inv;
      for (std::size_t j = k + 1; j < n; ++j) m(i, j) -= f * m(k, j);
    }
  }
  return true;
}

template <>
inline bool is_positive_definite(Matrix<Scalar> m, bool allow_semidefinite) {
  const std::size_t n = m.rows();
  for (std::size_t k = 0; k < n; ++k) {
    int s = m(k, k).sign();
    if (s < 0) return false;
    if (s == 0) {
      if (!allow_semidefinite) return false;
      for (std::size_t j = k + 1; j < n; ++j)
        if (!m(k, j).is_zero()) return false;
      continue;
    }
    Scalar inv = m(k, k).inverse();
    for (std::size_t i = k + 1; i < n; ++i) {
      if (m(i, k).is_zero()) continue;
      Scalar f = m(i, k) * inv;
      for (std::size_t j = k + 1; j < n; ++j) m(i, j) -= f * m(k, j);
    }
  }
  return true;
}

EMatrix to_scalar(const QMatrix& m);
EMatrix to_scalar(const ZMatrix& m);
EVec to_scalar(const QVec& v);
/// Converts to a rational matrix; throws if an entry is irrational.
QMatrix to_rational(const EMatrix& m);
/// Converts to an integer matrix, or nullopt if an entry is non-integral.
std::optional<ZMatrix> to_integer(const QMatrix& m);
QMatrix to_rational(const ZMatrix& m);

/// Smith normal form diagonal (nonnegative, each dividing the next; zeros last).
std::vector<Integer> smith_diagonal(ZMatrix m);

}  // namespace vor
