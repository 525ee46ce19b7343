// Copyright 2026 The DAAC Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef DAAC_DENSE_MATRIX_HPP
#define DAAC_DENSE_MATRIX_HPP

#include <initializer_list>
#include <vector>

#include "daac/common.hpp"

namespace daac {

/// Row-major dense matrix of reals. Small and unclever by design: the
/// factorization factors U (n x k) and H (k x k) stay dense while all
/// n x n data lives in SparseMatrix.
class DenseMatrix {
public:
  DenseMatrix() = default;
  DenseMatrix(index rows, index cols, real fill = 0.0);

  static DenseMatrix identity(index n);
  static DenseMatrix from_rows(std::initializer_list<std::initializer_list<real>> rows);

  index rows() const { return rows_; }
  index cols() const { return cols_; }

  real& operator()(index r, index c) { return data_[r * cols_ + c]; }
  real operator()(index r, index c) const { return data_[r * cols_ + c]; }

  real* data() { return data_.data(); }
  const real* data() const { return data_.data(); }

  bool same_shape(const DenseMatrix& other) const {
    return rows_ == other.rows_ && cols_ == other.cols_;
  }

  DenseMatrix transposed() const;

  /// this * other.
  DenseMatrix matmul(const DenseMatrix& other) const;

  /// this^T * other, without materializing the transpose.
  DenseMatrix transposed_matmul(const DenseMatrix& other) const;

  DenseMatrix hadamard(const DenseMatrix& other) const;

  DenseMatrix operator+(const DenseMatrix& other) const;
  DenseMatrix operator-(const DenseMatrix& other) const;
  DenseMatrix operator*(real scalar) const;

  DenseMatrix& operator+=(const DenseMatrix& other);
  DenseMatrix& operator-=(const DenseMatrix& other);

  real max_abs() const;

  /// max |a_ij - b_ij| over all entries.
  real max_abs_diff(const DenseMatrix& other) const;

  real frobenius_sq() const;

  bool all_finite() const;

  bool operator==(const DenseMatrix& other) const {
    return rows_ == other.rows_ && cols_ == other.cols_ && data_ == other.data_;
  }

private:
  index rows_ = 0;
  index cols_ = 0;
  std::vector<real> data_;
};

}  // namespace daac

#endif  // DAAC_DENSE_MATRIX_HPP
