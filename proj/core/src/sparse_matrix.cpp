// Copyright 2026 The DAAC Authors
// SPDX-License-Identifier: Apache-2.0

#include "daac/sparse_matrix.hpp"

#include <algorithm>
#include <cmath>

namespace daac {

SparseMatrix::SparseMatrix(index rows, index cols)
    : rows_(rows), cols_(cols), row_offsets_(static_cast<std::size_t>(rows) + 1, 0) {
  if (rows < 0 || cols < 0) {
    throw DimensionError("SparseMatrix: negative dimension");
  }
}

SparseMatrix SparseMatrix::from_triplets(index rows, index cols,
                                         std::vector<Triplet> triplets) {
  for (const auto& t : triplets) {
    if (t.row < 0 || t.row >= rows || t.col < 0 || t.col >= cols) {
      throw DimensionError("from_triplets: entry (" + std::to_string(t.row) +
                           ", " + std::to_string(t.col) +
                           ") outside " + std::to_string(rows) + "x" +
                           std::to_string(cols));
    }
  }
  std::sort(triplets.begin(), triplets.end(),
            [](const Triplet& a, const Triplet& b) {
              return std::tie(a.row, a.col) < std::tie(b.row, b.col);
            });

  SparseMatrix m(rows, cols);
  m.col_indices_.reserve(triplets.size());
  m.values_.reserve(triplets.size());

  std::size_t i = 0;
  while (i < triplets.size()) {
    const index r = triplets[i].row;
    const index c = triplets[i].col;
    real sum = 0.0;
    while (i < triplets.size() && triplets[i].row == r && triplets[i].col == c) {
      sum += triplets[i].value;
      ++i;
    }
    if (sum != 0.0) {
      m.col_indices_.push_back(c);
      m.values_.push_back(sum);
      ++m.row_offsets_[static_cast<std::size_t>(r) + 1];
    }
  }
  for (std::size_t r = 0; r < static_cast<std::size_t>(rows); ++r) {
    m.row_offsets_[r + 1] += m.row_offsets_[r];
  }
  return m;
}

SparseMatrix SparseMatrix::from_dense(const DenseMatrix& dense) {
  std::vector<Triplet> trips;
  for (index i = 0; i < dense.rows(); ++i)
    for (index j = 0; j < dense.cols(); ++j)
      if (dense(i, j) != 0.0) trips.push_back({i, j, dense(i, j)});
  return from_triplets(dense.rows(), dense.cols(), std::move(trips));
}

real SparseMatrix::at(index r, index c) const {
  if (r < 0 || r >= rows_ || c < 0 || c >= cols_) {
    throw DimensionError("at: index out of range");
  }
  const index begin = row_offsets_[static_cast<std::size_t>(r)];
  const index end = row_offsets_[static_cast<std::size_t>(r) + 1];
  const auto first = col_indices_.begin() + begin;
  const auto last = col_indices_.begin() + end;
  const auto it = std::lower_bound(first, last, c);
  if (it != last && *it == c) {
    return values_[static_cast<std::size_t>(it - col_indices_.begin())];
  }
  return 0.0;
}

SparseMatrix SparseMatrix::transposed() const {
  std::vector<Triplet> trips;
  trips.reserve(values_.size());
  for (index r = 0; r < rows_; ++r) {
    for (index p = row_offsets_[static_cast<std::size_t>(r)];
         p < row_offsets_[static_cast<std::size_t>(r) + 1]; ++p) {
      trips.push_back({col_indices_[static_cast<std::size_t>(p)], r,
                       values_[static_cast<std::size_t>(p)]});
    }
  }
  return from_triplets(cols_, rows_, std::move(trips));
}

bool SparseMatrix::symmetric(real tol) const {
  if (rows_ != cols_) return false;
  const SparseMatrix t = transposed();
  if (!same_pattern(t)) return false;
  for (std::size_t i = 0; i < values_.size(); ++i) {
    if (std::abs(values_[i] - t.values_[i]) > tol) return false;
  }
  return true;
}

bool SparseMatrix::same_pattern(const SparseMatrix& other) const {
  return rows_ == other.rows_ && cols_ == other.cols_ &&
         row_offsets_ == other.row_offsets_ &&
         col_indices_ == other.col_indices_;
}

bool SparseMatrix::all_nonnegative() const {
  for (real v : values_)
    if (v < 0.0) return false;
  return true;
}

DenseMatrix SparseMatrix::to_dense() const {
  DenseMatrix d(rows_, cols_);
  for (index r = 0; r < rows_; ++r) {
    for (index p = row_offsets_[static_cast<std::size_t>(r)];
         p < row_offsets_[static_cast<std::size_t>(r) + 1]; ++p) {
      d(r, col_indices_[static_cast<std::size_t>(p)]) =
          values_[static_cast<std::size_t>(p)];
    }
  }
  return d;
}

std::vector<Triplet> SparseMatrix::to_triplets() const {
  std::vector<Triplet> trips;
  trips.reserve(values_.size());
  for (index r = 0; r < rows_; ++r) {
    for (index p = row_offsets_[static_cast<std::size_t>(r)];
         p < row_offsets_[static_cast<std::size_t>(r) + 1]; ++p) {
      trips.push_back({r, col_indices_[static_cast<std::size_t>(p)],
                       values_[static_cast<std::size_t>(p)]});
    }
  }
  return trips;
}

real SparseMatrix::sum() const {
  real s = 0.0;
  for (real v : values_) s += v;
  return s;
}

}  // namespace daac
