// Copyright 2026 The DAAC Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef DAAC_SPARSE_MATRIX_HPP
#define DAAC_SPARSE_MATRIX_HPP

#include <tuple>
#include <vector>

#include "daac/common.hpp"
#include "daac/dense_matrix.hpp"

namespace daac {

/// One stored entry, used for construction and iteration.
struct Triplet {
  index row;
  index col;
  real value;
};

/// Compressed sparse row matrix of reals.
///
/// Construction normalizes the input: duplicate (row, col) pairs are
/// summed, entries whose sum is exactly zero are dropped, and columns are
/// sorted within each row. Stored entries are therefore a canonical
/// representation of the nonzero pattern, which the masked kernels rely on
/// when they require two operands to share a pattern.
class SparseMatrix {
public:
  SparseMatrix() = default;
  SparseMatrix(index rows, index cols);

  static SparseMatrix from_triplets(index rows, index cols,
                                    std::vector<Triplet> triplets);
  static SparseMatrix from_dense(const DenseMatrix& dense);

  index rows() const { return rows_; }
  index cols() const { return cols_; }
  index nnz() const { return static_cast<index>(values_.size()); }
  bool empty() const { return values_.empty(); }

  const std::vector<index>& row_offsets() const { return row_offsets_; }
  const std::vector<index>& col_indices() const { return col_indices_; }
  const std::vector<real>& values() const { return values_; }
  std::vector<real>& values() { return values_; }

  /// Value at (r, c); zero when the entry is not stored.
  real at(index r, index c) const;

  SparseMatrix transposed() const;

  bool symmetric(real tol = 0.0) const;

  bool same_pattern(const SparseMatrix& other) const;

  bool all_nonnegative() const;

  DenseMatrix to_dense() const;

  std::vector<Triplet> to_triplets() const;

  /// Sum of all stored values.
  real sum() const;

private:
  index rows_ = 0;
  index cols_ = 0;
  std::vector<index> row_offsets_;  // size rows_ + 1
  std::vector<index> col_indices_;
  std::vector<real> values_;
};

}  // namespace daac

#endif  // DAAC_SPARSE_MATRIX_HPP
