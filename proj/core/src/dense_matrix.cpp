// Copyright 2026 The DAAC Authors
// SPDX-License-Identifier: Apache-2.0

#include "daac/dense_matrix.hpp"

#include <algorithm>
#include <cmath>

namespace daac {

namespace {

void check_same_shape(const DenseMatrix& a, const DenseMatrix& b,
                      const char* op) {
  if (!a.same_shape(b)) {
    throw DimensionError(std::string(op) + ": shape mismatch (" +
                         std::to_string(a.rows()) + "x" +
                         std::to_string(a.cols()) + " vs " +
                         std::to_string(b.rows()) + "x" +
                         std::to_string(b.cols()) + ")");
  }
}

}  // namespace

DenseMatrix::DenseMatrix(index rows, index cols, real fill)
    : rows_(rows), cols_(cols), data_(static_cast<std::size_t>(rows * cols), fill) {
  if (rows < 0 || cols < 0) {
    throw DimensionError("DenseMatrix: negative dimension");
  }
}

DenseMatrix DenseMatrix::identity(index n) {
  DenseMatrix m(n, n);
  for (index i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

DenseMatrix DenseMatrix::from_rows(
    std::initializer_list<std::initializer_list<real>> rows) {
  const index r = static_cast<index>(rows.size());
  const index c = r == 0 ? 0 : static_cast<index>(rows.begin()->size());
  DenseMatrix m(r, c);
  index i = 0;
  for (const auto& row : rows) {
    if (static_cast<index>(row.size()) != c) {
      throw DimensionError("from_rows: ragged initializer");
    }
    index j = 0;
    for (real v : row) m(i, j++) = v;
    ++i;
  }
  return m;
}

DenseMatrix DenseMatrix::transposed() const {
  DenseMatrix t(cols_, rows_);
  for (index i = 0; i < rows_; ++i)
    for (index j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

DenseMatrix DenseMatrix::matmul(const DenseMatrix& other) const {
  if (cols_ != other.rows_) {
    throw DimensionError("matmul: inner dimensions " + std::to_string(cols_) +
                         " vs " + std::to_string(other.rows_));
  }
  DenseMatrix out(rows_, other.cols_);
  for (index i = 0; i < rows_; ++i) {
    for (index l = 0; l < cols_; ++l) {
      const real a = (*this)(i, l);
      if (a == 0.0) continue;
      const real* brow = other.data() + l * other.cols_;
      real* orow = out.data() + i * other.cols_;
      for (index j = 0; j < other.cols_; ++j) orow[j] += a * brow[j];
    }
  }
  return out;
}

DenseMatrix DenseMatrix::transposed_matmul(const DenseMatrix& other) const {
  if (rows_ != other.rows_) {
    throw DimensionError("transposed_matmul: inner dimensions " +
                         std::to_string(rows_) + " vs " +
                         std::to_string(other.rows_));
  }
  DenseMatrix out(cols_, other.cols_);
  for (index l = 0; l < rows_; ++l) {
    const real* arow = data() + l * cols_;
    const real* brow = other.data() + l * other.cols_;
    for (index i = 0; i < cols_; ++i) {
      const real a = arow[i];
      if (a == 0.0) continue;
      real* orow = out.data() + i * other.cols_;
      for (index j = 0; j < other.cols_; ++j) orow[j] += a * brow[j];
    }
  }
  return out;
}

DenseMatrix DenseMatrix::hadamard(const DenseMatrix& other) const {
  check_same_shape(*this, other, "hadamard");
  DenseMatrix out(rows_, cols_);
  for (std::size_t i = 0; i < data_.size(); ++i)
    out.data_[i] = data_[i] * other.data_[i];
  return out;
}

DenseMatrix DenseMatrix::operator+(const DenseMatrix& other) const {
  check_same_shape(*this, other, "operator+");
  DenseMatrix out = *this;
  out += other;
  return out;
}

DenseMatrix DenseMatrix::operator-(const DenseMatrix& other) const {
  check_same_shape(*this, other, "operator-");
  DenseMatrix out = *this;
  out -= other;
  return out;
}

DenseMatrix DenseMatrix::operator*(real scalar) const {
  DenseMatrix out = *this;
  for (auto& v : out.data_) v *= scalar;
  return out;
}

DenseMatrix& DenseMatrix::operator+=(const DenseMatrix& other) {
  check_same_shape(*this, other, "operator+=");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += other.data_[i];
  return *this;
}

DenseMatrix& DenseMatrix::operator-=(const DenseMatrix& other) {
  check_same_shape(*this, other, "operator-=");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= other.data_[i];
  return *this;
}

real DenseMatrix::max_abs() const {
  real m = 0.0;
  for (real v : data_) m = std::max(m, std::abs(v));
  return m;
}

real DenseMatrix::max_abs_diff(const DenseMatrix& other) const {
  check_same_shape(*this, other, "max_abs_diff");
  real m = 0.0;
  for (std::size_t i = 0; i < data_.size(); ++i)
    m = std::max(m, std::abs(data_[i] - other.data_[i]));
  return m;
}

real DenseMatrix::frobenius_sq() const {
  real s = 0.0;
  for (real v : data_) s += v * v;
  return s;
}

bool DenseMatrix::all_finite() const {
  for (real v : data_)
    if (!std::isfinite(v)) return false;
  return true;
}

}  // namespace daac
