// Copyright 2026 The DAAC Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef DAAC_REPORT_HPP
#define DAAC_REPORT_HPP

#include <optional>
#include <string>
#include <vector>

#include "daac/analysis.hpp"
#include "daac/dense_matrix.hpp"
#include "daac/solver.hpp"

namespace daac {

struct MetricsBlock {
  real nmi = 0.0;
  real ari = 0.0;
  real purity = 0.0;
};

struct AccuracyBlock {
  index correct = 0;
  index total = 0;
  real accuracy = 0.0;
};

// Everything one run produces. The JSON form round-trips losslessly and is
// byte-stable for a fixed command line and seed.
struct RunReport {
  int schema_version = 1;
  std::string method = "fit";
  SolverConfig config;
  real tau = 0.05;

  index n = 0;
  index k = 0;
  bool converged = false;
  index iterations = 0;
  real objective = 0.0;

  std::vector<std::string> users;
  std::vector<index> assignment;
  // Majority truth label per community, present when labels were supplied.
  std::optional<std::vector<std::string>> community_labels;

  DenseMatrix u;                  // membership factor as fitted
  DenseMatrix h;                  // relation factor as fitted
  DenseMatrix h_normalized;       // symmetrized factor after column scaling
  DenseMatrix relation_strengths; // symmetrized matrix the extraction saw
  std::vector<Relation> relations;  // k*k row-major, diagonal None
  std::vector<real> intra;

  std::optional<MetricsBlock> metrics;
  std::optional<AccuracyBlock> relation_accuracy;
  std::optional<real> timing_seconds;
};

std::string to_json_string(const RunReport& report);
RunReport report_from_json(const std::string& text);

// Plain-text rendering of the same report. When color is true, relation
// names are wrapped in ANSI color codes.
std::string render_table(const RunReport& report, bool color = false);

}  // namespace daac

#endif  // DAAC_REPORT_HPP
