// Copyright 2026 The DAAC Authors
// SPDX-License-Identifier: Apache-2.0

#include "daac/analysis.hpp"

#include <algorithm>
#include <cmath>

namespace daac {

Assignment assign(const DenseMatrix& U) {
  Assignment out;
  out.k = U.cols();
  out.community_of.resize(static_cast<std::size_t>(U.rows()));
  for (index i = 0; i < U.rows(); ++i) {
    index best = 0;
    real best_val = U(i, 0);
    bool all_zero = U(i, 0) == 0.0;
    for (index l = 1; l < U.cols(); ++l) {
      if (U(i, l) != 0.0) all_zero = false;
      if (U(i, l) > best_val) {
        best_val = U(i, l);
        best = l;
      }
    }
    if (all_zero) {
      out.zero_rows.push_back(i);
      best = 0;
    }
    out.community_of[static_cast<std::size_t>(i)] = best;
  }
  return out;
}

RelationReport extract_relations(const DenseMatrix& H, real tau) {
  const index k = H.rows();
  if (H.cols() != k) {
    throw DimensionError("extract_relations: matrix must be square");
  }
  if (k < 2) {
    throw ConfigError("extract_relations: need at least 2 communities");
  }
  if (tau < 0.0 || tau >= 1.0) {
    throw ConfigError("extract_relations: tau must lie in [0, 1)");
  }

  RelationReport report;
  report.k = k;
  report.strength = (H + H.transposed()) * 0.5;
  report.intra.resize(static_cast<std::size_t>(k));
  for (index i = 0; i < k; ++i) report.intra[static_cast<std::size_t>(i)] = H(i, i);

  real m = 0.0;
  for (index i = 0; i < k; ++i)
    for (index j = 0; j < k; ++j)
      if (i != j) m = std::max(m, std::abs(report.strength(i, j)));

  report.relation.assign(static_cast<std::size_t>(k * k), Relation::None);
  for (index i = 0; i < k; ++i) {
    for (index j = 0; j < k; ++j) {
      if (i == j) continue;
      const real s = report.strength(i, j);
      Relation rel = Relation::None;
      if (std::abs(s) > tau * m) {
        rel = s < 0.0 ? Relation::Antagonism : Relation::Alliance;
      }
      report.relation[static_cast<std::size_t>(i * k + j)] = rel;
    }
  }
  return report;
}

std::map<index, std::string> majority_label(
    const Assignment& assignment,
    const std::vector<std::string>& truth_labels) {
  if (assignment.community_of.size() != truth_labels.size()) {
    throw DimensionError("majority_label: assignment and labels differ in length");
  }
  std::map<index, std::string> out;
  for (index c = 0; c < assignment.k; ++c) {
    std::map<std::string, index> counts;
    for (std::size_t i = 0; i < truth_labels.size(); ++i) {
      if (assignment.community_of[i] == c) ++counts[truth_labels[i]];
    }
    if (counts.empty()) {
      out[c] = "(empty)";
      continue;
    }
    // std::map iterates names in lexicographic order, so keeping a strict
    // maximum breaks ties toward the lexicographically smallest name.
    std::string best;
    index best_count = -1;
    for (const auto& [name, count] : counts) {
      if (count > best_count) {
        best = name;
        best_count = count;
      }
    }
    out[c] = best;
  }
  return out;
}

DenseMatrix aggregate_attitudes(const SparseMatrix& S,
                                const Assignment& assignment, index k) {
  if (S.rows() != S.cols()) {
    throw DimensionError("aggregate_attitudes: S must be square");
  }
  if (static_cast<index>(assignment.community_of.size()) != S.rows()) {
    throw DimensionError("aggregate_attitudes: assignment length " +
                         std::to_string(assignment.community_of.size()) +
                         " does not match n = " + std::to_string(S.rows()));
  }
  DenseMatrix A(k, k);
  const auto& offsets = S.row_offsets();
  const auto& cols = S.col_indices();
  const auto& values = S.values();
  for (index r = 0; r < S.rows(); ++r) {
    const index p_comm = assignment.community_of[static_cast<std::size_t>(r)];
    for (index p = offsets[static_cast<std::size_t>(r)];
         p < offsets[static_cast<std::size_t>(r) + 1]; ++p) {
      const index q_comm =
          assignment.community_of[static_cast<std::size_t>(
              cols[static_cast<std::size_t>(p)])];
      A(p_comm, q_comm) += values[static_cast<std::size_t>(p)];
    }
  }
  return A;
}

real relation_accuracy(const RelationReport& report,
                       const std::map<index, std::string>& labels,
                       const TruthRelations& truth) {
  if (truth.empty()) return 1.0;

  // Communities claiming each name; names claimed by != 1 community are
  // ambiguous and any truth pair touching them counts as incorrect.
  std::map<std::string, std::vector<index>> claimants;
  for (const auto& [community, name] : labels) {
    claimants[name].push_back(community);
  }

  index correct = 0;
  index total = 0;
  for (const auto& [pair, rel] : truth) {
    ++total;
    const auto a = claimants.find(pair.first);
    const auto b = claimants.find(pair.second);
    if (a == claimants.end() || b == claimants.end()) continue;
    if (a->second.size() != 1 || b->second.size() != 1) continue;
    const index ca = a->second.front();
    const index cb = b->second.front();
    if (ca == cb) continue;
    if (report.relation_at(ca, cb) == rel) ++correct;
  }
  return static_cast<real>(correct) / static_cast<real>(total);
}

}  // namespace daac
