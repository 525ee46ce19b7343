// Copyright 2026 The DAAC Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef DAAC_KERNELS_HPP
#define DAAC_KERNELS_HPP

#include <utility>
#include <vector>

#include "daac/common.hpp"
#include "daac/dense_matrix.hpp"
#include "daac/sparse_matrix.hpp"

namespace daac {

/// Weighted degree d_i = sum_j R_ij.
/// Requires R square; values are expected nonnegative.
std::vector<real> degree_vector(const SparseMatrix& R);

/// D^{-1/2} R D^{-1/2} with d the weighted degrees. Entries incident to a
/// zero-degree row or column are dropped (0/0 defined as 0); a negative
/// entry raises DomainError.
SparseMatrix symmetric_normalize(const SparseMatrix& R);

/// (A_plus, A_minus) with A_plus = (|A|+A)/2 and A_minus = (|A|-A)/2.
/// Both parts are nonnegative and A = A_plus - A_minus exactly.
std::pair<SparseMatrix, SparseMatrix> pos_neg_split(const SparseMatrix& A);
std::pair<DenseMatrix, DenseMatrix> pos_neg_split(const DenseMatrix& A);

/// Indicator of S's nonzero pattern: W_ij = 1 where S_ij != 0.
SparseMatrix weight_mask(const SparseMatrix& S);

/// W^2 ⊙ S restricted to the shared pattern. W and S must have identical
/// sparsity patterns (ConsistencyError otherwise); for the canonical 0/1
/// mask this returns S itself.
SparseMatrix masked_apply(const SparseMatrix& W, const SparseMatrix& S);

/// W^2 ⊙ (U H V^T) without materializing the dense triple product:
/// entry (i,j) = W_ij^2 * (UH)_{i,:} . V_{j,:}. Cost O(n k^2 + nnz(W) k).
SparseMatrix masked_lowrank(const SparseMatrix& W, const DenseMatrix& U,
                            const DenseMatrix& H, const DenseMatrix& V,
                            Exec exec = Exec::Seq);

/// sum over W's nonzeros of W_ij^2 (S_ij - (U H U^T)_ij)^2.
real frobenius_sq_masked(const SparseMatrix& W, const SparseMatrix& S,
                         const DenseMatrix& U, const DenseMatrix& H,
                         Exec exec = Exec::Seq);

/// A * X for sparse A and dense X.
DenseMatrix spmm(const SparseMatrix& A, const DenseMatrix& X,
                 Exec exec = Exec::Seq);

/// A^T * X without materializing the transpose (sequential scatter; the
/// parallel path transposes first and gathers).
DenseMatrix spmm_transposed(const SparseMatrix& A, const DenseMatrix& X,
                            Exec exec = Exec::Seq);

}  // namespace daac

#endif  // DAAC_KERNELS_HPP
