// Copyright 2026 The DAAC Authors
// SPDX-License-Identifier: Apache-2.0
//
// End-to-end runs: dataset in, RunReport out. The joint method factorizes
// interactions and attitudes together; the two-step baseline detects
// communities from interactions alone and then classifies the aggregated
// attitudes between them.

#ifndef DAAC_PIPELINE_HPP
#define DAAC_PIPELINE_HPP

#include <string>
#include <vector>

#include "daac/ingest.hpp"
#include "daac/report.hpp"
#include "daac/solver.hpp"

namespace daac {

struct PipelineOptions {
  SolverConfig solver;
  real tau = 0.05;
  bool two_step = false;
  bool timing = false;
};

RunReport run_pipeline(const LabeledDataset& dataset,
                       const PipelineOptions& options);

struct SweepRow {
  real lambda = 0.0;
  real alpha = 0.0;
  real nmi = 0.0;
  real ari = 0.0;
  real purity = 0.0;
  index correct_relations = 0;
  index total_relations = 0;
};

struct SweepResult {
  std::vector<SweepRow> rows;
  bool alpha_swept = false;  // controls whether the CSV has an alpha column
  std::size_t best_row = 0;  // highest NMI; relation accuracy breaks ties
};

// One fit per grid point. Each point runs with seed base_seed + row index so
// points stay independent; rows appear in grid order regardless of exec.
// Requires truth labels (for NMI/ARI/purity) and truth relations.
SweepResult run_sweep(const LabeledDataset& dataset,
                      const PipelineOptions& base,
                      const std::vector<real>& lambda_grid,
                      const std::vector<real>& alpha_grid, Exec exec);

std::string sweep_to_csv(const SweepResult& sweep);

// The default sweep grid: powers of ten from 1e0 through 1e9.
std::vector<real> default_lambda_grid();

}  // namespace daac

#endif  // DAAC_PIPELINE_HPP
