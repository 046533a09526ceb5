#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "mochain/error.hpp"

namespace mochain {

/// Dense row-major matrix over an exact or floating scalar.
template <class T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, const T& fill = T())
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  static Matrix identity(std::size_t n, const T& zero, const T& one) {
    Matrix m(n, n, zero);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = one;
    return m;
  }

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }

  T& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const T& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  const T& at(std::size_t i, std::size_t j) const {
    if (i >= rows_ || j >= cols_)
      throw IndexError("matrix index (" + std::to_string(i) + "," + std::to_string(j) +
                       ") outside " + std::to_string(rows_) + "x" + std::to_string(cols_));
    return (*this)(i, j);
  }

  Matrix transposed() const {
    Matrix t;
    t.rows_ = cols_;
    t.cols_ = rows_;
    t.data_.reserve(data_.size());
    for (std::size_t j = 0; j < cols_; ++j)
      for (std::size_t i = 0; i < rows_; ++i) t.data_.push_back((*this)(i, j));
    return t;
  }

  /// Leading k x k block.
  Matrix leading(std::size_t k) const {
    Matrix m;
    m.rows_ = m.cols_ = k;
    m.data_.reserve(k * k);
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = 0; j < k; ++j) m.data_.push_back((*this)(i, j));
    return m;
  }

  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
};

/// Product of two matrices; `zero` seeds each accumulator.
template <class T>
Matrix<T> multiply(const Matrix<T>& a, const Matrix<T>& b, const T& zero) {
  if (a.cols() != b.rows()) throw DomainError("matrix product shape mismatch");
  Matrix<T> c(a.rows(), b.cols(), zero);
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      if (is_zero(a(i, k))) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) c(i, j).add_mul(a(i, k), b(k, j));
    }
  return c;
}

/// Inverse of a unit lower-triangular matrix by forward substitution.
/// Entries above the diagonal are ignored.
template <class T>
Matrix<T> invert_unit_lower(const Matrix<T>& l) {
  const std::size_t n = l.rows();
  const T zero = like(l(0, 0), 0);
  Matrix<T> inv(n, n, zero);
  for (std::size_t i = 0; i < n; ++i) {
    inv(i, i) = like(l(0, 0), 1);
    for (std::size_t j = i; j-- > 0;) {
      T acc = zero;
      for (std::size_t k = j; k < i; ++k) acc.sub_mul(l(i, k), inv(k, j));
      inv(i, j) = std::move(acc);
    }
  }
  return inv;
}

}  // namespace mochain
