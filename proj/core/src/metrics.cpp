// Copyright 2026 The DAAC Authors
// SPDX-License-Identifier: Apache-2.0

#include "daac/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <map>

namespace daac {

namespace {

template <typename Label>
ContingencyTable build_table(const std::vector<index>& pred,
                             const std::vector<Label>& truth) {
  if (pred.size() != truth.size()) {
    throw DimensionError("contingency: partitions differ in length");
  }
  if (pred.empty()) {
    throw DimensionError("contingency: empty partitions");
  }
  std::map<index, index> pred_ids;
  std::map<Label, index> truth_ids;
  for (index p : pred) pred_ids.emplace(p, 0);
  for (const Label& t : truth) truth_ids.emplace(t, 0);
  index next = 0;
  for (auto& [key, id] : pred_ids) id = next++;
  next = 0;
  for (auto& [key, id] : truth_ids) id = next++;

  ContingencyTable table;
  const std::size_t r = pred_ids.size();
  const std::size_t c = truth_ids.size();
  table.counts.assign(r, std::vector<index>(c, 0));
  table.row_sums.assign(r, 0);
  table.col_sums.assign(c, 0);
  for (std::size_t i = 0; i < pred.size(); ++i) {
    const auto pi = static_cast<std::size_t>(pred_ids[pred[i]]);
    const auto ti = static_cast<std::size_t>(truth_ids[truth[i]]);
    ++table.counts[pi][ti];
    ++table.row_sums[pi];
    ++table.col_sums[ti];
    ++table.total;
  }
  return table;
}

real pairs2(index n) { return static_cast<real>(n) * static_cast<real>(n - 1) / 2.0; }

}  // namespace

ContingencyTable contingency(const std::vector<index>& pred,
                             const std::vector<std::string>& truth) {
  return build_table(pred, truth);
}

ContingencyTable contingency(const std::vector<index>& pred,
                             const std::vector<index>& truth) {
  return build_table(pred, truth);
}

real nmi(const ContingencyTable& table, NmiNorm norm) {
  const real n = static_cast<real>(table.total);
  real h_pred = 0.0;
  for (index a : table.row_sums) {
    if (a > 0) {
      const real p = static_cast<real>(a) / n;
      h_pred -= p * std::log(p);
    }
  }
  real h_truth = 0.0;
  for (index b : table.col_sums) {
    if (b > 0) {
      const real p = static_cast<real>(b) / n;
      h_truth -= p * std::log(p);
    }
  }
  if (h_pred == 0.0 || h_truth == 0.0) {
    // At least one partition is a single cluster: the partitions agree
    // exactly when both are.
    return (h_pred == 0.0 && h_truth == 0.0) ? 1.0 : 0.0;
  }

  // Identical up to relabeling: the table is a permutation of a diagonal.
  // Return exactly 1 rather than the formula's value, which can land one
  // ulp off after the divisions.
  bool permutation_table = table.counts.size() == table.counts[0].size();
  if (permutation_table) {
    std::vector<index> col_nonzeros(table.counts[0].size(), 0);
    for (const auto& row : table.counts) {
      index row_nonzeros = 0;
      for (std::size_t j = 0; j < row.size(); ++j) {
        if (row[j] > 0) {
          ++row_nonzeros;
          ++col_nonzeros[j];
        }
      }
      if (row_nonzeros != 1) {
        permutation_table = false;
        break;
      }
    }
    if (permutation_table) {
      for (index c : col_nonzeros) {
        if (c != 1) {
          permutation_table = false;
          break;
        }
      }
    }
  }
  if (permutation_table) return 1.0;

  real mi = 0.0;
  for (std::size_t i = 0; i < table.counts.size(); ++i) {
    for (std::size_t j = 0; j < table.counts[i].size(); ++j) {
      const index c = table.counts[i][j];
      if (c == 0) continue;
      const real pij = static_cast<real>(c) / n;
      const real pi = static_cast<real>(table.row_sums[i]) / n;
      const real pj = static_cast<real>(table.col_sums[j]) / n;
      mi += pij * std::log(pij / (pi * pj));
    }
  }

  real denom = 0.0;
  switch (norm) {
    case NmiNorm::Sqrt: denom = std::sqrt(h_pred * h_truth); break;
    case NmiNorm::Min: denom = std::min(h_pred, h_truth); break;
    case NmiNorm::Mean: denom = (h_pred + h_truth) / 2.0; break;
  }
  const real value = mi / denom;
  // Guard rounding just past the ends of [0, 1].
  return std::clamp(value, 0.0, 1.0);
}

real ari(const ContingencyTable& table) {
  if (table.total < 2) {
    throw DimensionError("ari: need at least 2 elements");
  }
  real sum_ij = 0.0;
  for (const auto& row : table.counts)
    for (index c : row) sum_ij += pairs2(c);
  real sum_a = 0.0;
  for (index a : table.row_sums) sum_a += pairs2(a);
  real sum_b = 0.0;
  for (index b : table.col_sums) sum_b += pairs2(b);
  const real expected = sum_a * sum_b / pairs2(table.total);
  const real maximum = (sum_a + sum_b) / 2.0;
  if (maximum == expected) return 1.0;
  return (sum_ij - expected) / (maximum - expected);
}

real purity(const ContingencyTable& table) {
  index majority = 0;
  for (const auto& row : table.counts) {
    index best = 0;
    for (index c : row) best = std::max(best, c);
    majority += best;
  }
  return static_cast<real>(majority) / static_cast<real>(table.total);
}

}  // namespace daac
