// Copyright 2026 The DAAC Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef DAAC_ANALYSIS_HPP
#define DAAC_ANALYSIS_HPP

#include <map>
#include <string>
#include <vector>

#include "daac/common.hpp"
#include "daac/dense_matrix.hpp"
#include "daac/sparse_matrix.hpp"

namespace daac {

/// Hard community assignment derived from membership strengths.
struct Assignment {
  std::vector<index> community_of;  // user index -> community in [0, k)
  index k = 0;
  std::vector<index> zero_rows;  // users with all-zero membership (warning)
};

/// Classified relations between detected communities.
struct RelationReport {
  index k = 0;
  std::vector<Relation> relation;  // k*k row-major; diagonal entries None
  DenseMatrix strength;            // symmetrized relation matrix
  std::vector<real> intra;         // diagonal of the input matrix
  std::map<index, std::string> labels;  // optional community names

  Relation relation_at(index i, index j) const {
    return relation[static_cast<std::size_t>(i * k + j)];
  }
};

/// community_of[i] = argmax_l U(i, l), ties broken by the lowest community
/// index. All-zero rows go to community 0 and are listed in zero_rows.
Assignment assign(const DenseMatrix& U);

/// Classifies community pairs from a k x k relation matrix. The matrix is
/// symmetrized as (H + H^T)/2; with m the largest off-diagonal magnitude,
/// a pair is None when |strength| <= tau * m, otherwise Antagonism for
/// negative strength and Alliance for positive.
RelationReport extract_relations(const DenseMatrix& H, real tau);

/// Maps each detected community to the most frequent ground-truth label
/// among its members; ties are broken lexicographically and empty
/// communities are labeled "(empty)".
std::map<index, std::string> majority_label(
    const Assignment& assignment, const std::vector<std::string>& truth_labels);

/// A[p][q] = sum of S_ij over pairs with community_of[i] = p and
/// community_of[j] = q. The diagonal collects intra-community attitude.
DenseMatrix aggregate_attitudes(const SparseMatrix& S,
                                const Assignment& assignment, index k);

/// Fraction of ground-truth unordered pairs whose detected relation class
/// matches. Truth pairs naming a label claimed by zero or several detected
/// communities are counted incorrect. An empty truth set scores 1.0.
real relation_accuracy(const RelationReport& report,
                       const std::map<index, std::string>& labels,
                       const TruthRelations& truth);

}  // namespace daac

#endif  // DAAC_ANALYSIS_HPP
