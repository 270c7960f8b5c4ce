#pragma once

#include <algorithm>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "quadhess/error.hpp"
#include "quadhess/scalar.hpp"

namespace quadhess {

/// Dense column vector. Immutable once built; arithmetic returns fresh values.
template <Scalar T>
class ColVector {
 public:
  ColVector() = default;
  explicit ColVector(std::vector<T> entries) : entries_(std::move(entries)) {}
  ColVector(std::initializer_list<T> entries) : entries_(entries) {}

  static ColVector zeros(std::size_t dim) { return ColVector(std::vector<T>(dim, T(0))); }

  /// e_i of the given dimension.
  static ColVector unit(std::size_t dim, std::size_t i) {
    std::vector<T> v(dim, T(0));
    v.at(i) = T(1);
    return ColVector(std::move(v));
  }

  template <class F>
  static ColVector generate(std::size_t dim, F&& f) {
    std::vector<T> v;
    v.reserve(dim);
    for (std::size_t i = 0; i < dim; ++i) v.push_back(T(f(i)));
    return ColVector(std::move(v));
  }

  std::size_t dim() const noexcept { return entries_.size(); }
  const T& operator[](std::size_t i) const { return entries_[i]; }
  const T& at(std::size_t i) const { return entries_.at(i); }
  std::span<const T> entries() const noexcept { return entries_; }

  friend bool operator==(const ColVector&, const ColVector&) = default;

 private:
  std::vector<T> entries_;
};

/// Dense row-major matrix. All entries share the scalar kind T.
template <Scalar T>
class Matrix {
 public:
  Matrix() = default;

  Matrix(std::size_t rows, std::size_t cols, std::vector<T> entries)
      : rows_(rows), cols_(cols), entries_(std::move(entries)) {
    if (entries_.size() != rows_ * cols_) {
      throw Error(ErrorKind::dimension, "matrix entry count does not match its shape");
    }
  }

  static Matrix from_rows(std::initializer_list<std::initializer_list<T>> rows) {
    std::size_t r = rows.size();
    std::size_t c = r == 0 ? 0 : rows.begin()->size();
    std::vector<T> e;
    e.reserve(r * c);
    for (const auto& row : rows) {
      if (row.size() != c) throw Error(ErrorKind::dimension, "ragged matrix rows");
      e.insert(e.end(), row.begin(), row.end());
    }
    return Matrix(r, c, std::move(e));
  }

  static Matrix zeros(std::size_t rows, std::size_t cols) {
    return Matrix(rows, cols, std::vector<T>(rows * cols, T(0)));
  }

  static Matrix identity(std::size_t n) {
    return generate(n, n, [](std::size_t i, std::size_t j) { return i == j ? T(1) : T(0); });
  }

  static Matrix diagonal(std::initializer_list<T> diag) {
    std::vector<T> d(diag);
    return generate(d.size(), d.size(),
                    [&](std::size_t i, std::size_t j) { return i == j ? d[i] : T(0); });
  }

  template <class F>
  static Matrix generate(std::size_t rows, std::size_t cols, F&& f) {
    std::vector<T> e;
    e.reserve(rows * cols);
    for (std::size_t i = 0; i < rows; ++i)
      for (std::size_t j = 0; j < cols; ++j) e.push_back(T(f(i, j)));
    return Matrix(rows, cols, std::move(e));
  }

  /// n×1 matrix holding v.
  static Matrix column(const ColVector<T>& v) {
    return generate(v.dim(), 1, [&](std::size_t i, std::size_t) { return v[i]; });
  }

  /// 1×n matrix holding vᵀ.
  static Matrix row(const ColVector<T>& v) {
    return generate(1, v.dim(), [&](std::size_t, std::size_t j) { return v[j]; });
  }

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool is_square() const noexcept { return rows_ == cols_; }

  const T& operator()(std::size_t i, std::size_t j) const { return entries_[i * cols_ + j]; }
  const T& at(std::size_t i, std::size_t j) const {
    if (i >= rows_ || j >= cols_) throw Error(ErrorKind::dimension, "matrix index out of range");
    return entries_[i * cols_ + j];
  }
  std::span<const T> entries() const noexcept { return entries_; }

  /// Copy of the rows×cols block starting at (r0, c0).
  Matrix block(std::size_t r0, std::size_t c0, std::size_t rows, std::size_t cols) const {
    if (r0 + rows > rows_ || c0 + cols > cols_) {
      throw Error(ErrorKind::dimension, "block exceeds matrix bounds");
    }
    return generate(rows, cols,
                    [&](std::size_t i, std::size_t j) { return (*this)(r0 + i, c0 + j); });
  }

  ColVector<T> col(std::size_t j) const {
    return ColVector<T>::generate(rows_, [&](std::size_t i) { return (*this)(i, j); });
  }

  Matrix transpose() const {
    return generate(cols_, rows_, [&](std::size_t i, std::size_t j) { return (*this)(j, i); });
  }

  bool is_symmetric() const {
    if (!is_square()) return false;
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = i + 1; j < cols_; ++j)
        if (!((*this)(i, j) == (*this)(j, i))) return false;
    return true;
  }

  friend bool operator==(const Matrix&, const Matrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> entries_;
};

// Elementwise and algebraic operators. No conjugation anywhere: transposes
// and dot products are bilinear in every scalar kind.

template <Scalar T>
Matrix<T> operator+(const Matrix<T>& a, const Matrix<T>& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw Error(ErrorKind::dimension, "matrix sum shape mismatch");
  return Matrix<T>::generate(a.rows(), a.cols(),
                             [&](std::size_t i, std::size_t j) -> T { return a(i, j) + b(i, j); });
}

template <Scalar T>
Matrix<T> operator-(const Matrix<T>& a, const Matrix<T>& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw Error(ErrorKind::dimension, "matrix difference shape mismatch");
  return Matrix<T>::generate(a.rows(), a.cols(),
                             [&](std::size_t i, std::size_t j) -> T { return a(i, j) - b(i, j); });
}

template <Scalar T>
Matrix<T> operator*(const T& s, const Matrix<T>& m) {
  return Matrix<T>::generate(m.rows(), m.cols(),
                             [&](std::size_t i, std::size_t j) -> T { return s * m(i, j); });
}

template <Scalar T>
Matrix<T> operator*(const Matrix<T>& a, const Matrix<T>& b) {
  if (a.cols() != b.rows()) throw Error(ErrorKind::dimension, "matrix product shape mismatch");
  std::vector<T> e(a.rows() * b.cols(), T(0));
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      if (is_zero(a(i, k))) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) e[i * b.cols() + j] += a(i, k) * b(k, j);
    }
  return Matrix<T>(a.rows(), b.cols(), std::move(e));
}

template <Scalar T>
ColVector<T> operator*(const Matrix<T>& a, const ColVector<T>& v) {
  if (a.cols() != v.dim()) throw Error(ErrorKind::dimension, "matrix-vector shape mismatch");
  return ColVector<T>::generate(a.rows(), [&](std::size_t i) -> T {
    T s(0);
    for (std::size_t k = 0; k < a.cols(); ++k) s += a(i, k) * v[k];
    return s;
  });
}

template <Scalar T>
ColVector<T> operator+(const ColVector<T>& a, const ColVector<T>& b) {
  if (a.dim() != b.dim()) throw Error(ErrorKind::dimension, "vector sum dimension mismatch");
  return ColVector<T>::generate(a.dim(), [&](std::size_t i) -> T { return a[i] + b[i]; });
}

template <Scalar T>
ColVector<T> operator-(const ColVector<T>& a, const ColVector<T>& b) {
  if (a.dim() != b.dim()) throw Error(ErrorKind::dimension, "vector difference dimension mismatch");
  return ColVector<T>::generate(a.dim(), [&](std::size_t i) -> T { return a[i] - b[i]; });
}

template <Scalar T>
ColVector<T> operator*(const T& s, const ColVector<T>& v) {
  return ColVector<T>::generate(v.dim(), [&](std::size_t i) -> T { return s * v[i]; });
}

/// Bilinear aᵀb.
template <Scalar T>
T dot(const ColVector<T>& a, const ColVector<T>& b) {
  if (a.dim() != b.dim()) throw Error(ErrorKind::dimension, "dot product dimension mismatch");
  T s(0);
  for (std::size_t i = 0; i < a.dim(); ++i) s += a[i] * b[i];
  return s;
}

/// aᵀMb.
template <Scalar T>
T bilinear(const ColVector<T>& a, const Matrix<T>& m, const ColVector<T>& b) {
  return dot(a, m * b);
}

/// abᵀ.
template <Scalar T>
Matrix<T> outer(const ColVector<T>& a, const ColVector<T>& b) {
  return Matrix<T>::generate(a.dim(), b.dim(),
                             [&](std::size_t i, std::size_t j) -> T { return a[i] * b[j]; });
}

/// Entrywise kind conversion from exact rationals.
template <Scalar To>
Matrix<To> convert(const Matrix<Rational>& m) {
  return Matrix<To>::generate(m.rows(), m.cols(), [&](std::size_t i, std::size_t j) {
    return scalar_cast<To>(m(i, j));
  });
}

template <Scalar To>
ColVector<To> convert(const ColVector<Rational>& v) {
  return ColVector<To>::generate(v.dim(), [&](std::size_t i) { return scalar_cast<To>(v[i]); });
}

/// Largest entry magnitude, as a double.
template <Scalar T>
double max_abs(const Matrix<T>& m) {
  double best = 0.0;
  for (const T& x : m.entries()) best = std::max(best, magnitude(x));
  return best;
}

template <Scalar T>
double max_abs(const ColVector<T>& v) {
  double best = 0.0;
  for (const T& x : v.entries()) best = std::max(best, magnitude(x));
  return best;
}

}  // namespace quadhess
