// Copyright 2026 The DAAC Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef DAAC_METRICS_HPP
#define DAAC_METRICS_HPP

#include <string>
#include <vector>

#include "daac/common.hpp"

namespace daac {

/// Cross-tabulation of a predicted partition against a reference one.
struct ContingencyTable {
  std::vector<std::vector<index>> counts;  // r x c
  std::vector<index> row_sums;
  std::vector<index> col_sums;
  index total = 0;
};

ContingencyTable contingency(const std::vector<index>& pred,
                             const std::vector<std::string>& truth);
ContingencyTable contingency(const std::vector<index>& pred,
                             const std::vector<index>& truth);

/// Normalization of mutual information. Sqrt is the default; the variants
/// exist so results can be compared against other conventions.
enum class NmiNorm { Sqrt, Min, Mean };

/// Mutual information over normalized entropies (natural logs). If either
/// partition has zero entropy the value is 1 when both are the identical
/// single cluster and 0 otherwise.
real nmi(const ContingencyTable& table, NmiNorm norm = NmiNorm::Sqrt);

/// Adjusted Rand index (Hubert-Arabie). A zero adjustment denominator
/// (both partitions trivial) yields 1.
real ari(const ContingencyTable& table);

/// (1/n) * sum over predicted clusters of the majority count.
real purity(const ContingencyTable& table);

}  // namespace daac

#endif  // DAAC_METRICS_HPP
