// Copyright 2026 The DAAC Authors
// SPDX-License-Identifier: Apache-2.0

#include "daac/pipeline.hpp"

#include <chrono>
#include <cmath>
#include <future>
#include <sstream>

#include "daac/analysis.hpp"
#include "daac/metrics.hpp"

namespace daac {

RunReport run_pipeline(const LabeledDataset& dataset,
                       const PipelineOptions& options) {
  const auto start = std::chrono::steady_clock::now();
  const index n = dataset.R.rows();
  const index k = options.solver.k;

  RunReport report;
  report.method = options.two_step ? "two-step" : "fit";
  report.config = options.solver;
  report.tau = options.tau;
  report.n = n;
  report.k = k;
  report.users = dataset.users;

  const SolverResult res =
      options.two_step ? fit(SparseMatrix(n, n), dataset.R, options.solver)
                       : fit(dataset.S, dataset.R, options.solver);
  report.converged = res.converged;
  report.iterations = res.iterations_used;
  report.objective = res.objective_trace.back();
  report.u = res.U;
  report.h = res.H;
  const auto [u_scaled, h_scaled] = normalize_factors(res.U, res.H);
  report.h_normalized = (h_scaled + h_scaled.transposed()) * 0.5;

  const Assignment assignment = assign(res.U);
  report.assignment = assignment.community_of;

  // The joint method reads relations straight off the fitted factor; the
  // baseline classifies attitudes pooled over the detected communities.
  RelationReport rel;
  if (options.two_step) {
    rel = extract_relations(aggregate_attitudes(dataset.S, assignment, k),
                            options.tau);
  } else {
    rel = extract_relations(res.H, options.tau);
  }
  report.relation_strengths = rel.strength;
  report.relations = rel.relation;
  report.intra = rel.intra;

  if (dataset.labels) {
    const auto labels = majority_label(assignment, *dataset.labels);
    std::vector<std::string> per_community;
    per_community.reserve(static_cast<std::size_t>(k));
    for (index c = 0; c < k; ++c) {
      per_community.push_back(labels.at(c));
    }
    report.community_labels = std::move(per_community);

    const ContingencyTable table =
        contingency(assignment.community_of, *dataset.labels);
    MetricsBlock m;
    m.nmi = nmi(table);
    m.ari = ari(table);
    m.purity = purity(table);
    report.metrics = m;

    if (dataset.truth_relations && !dataset.truth_relations->empty()) {
      AccuracyBlock acc;
      acc.total = static_cast<index>(dataset.truth_relations->size());
      acc.accuracy = relation_accuracy(rel, labels, *dataset.truth_relations);
      acc.correct = static_cast<index>(
          std::llround(acc.accuracy * static_cast<real>(acc.total)));
      report.relation_accuracy = acc;
    }
  }

  if (options.timing) {
    const auto end = std::chrono::steady_clock::now();
    report.timing_seconds =
        std::chrono::duration<real>(end - start).count();
  }
  return report;
}

SweepResult run_sweep(const LabeledDataset& dataset,
                      const PipelineOptions& base,
                      const std::vector<real>& lambda_grid,
                      const std::vector<real>& alpha_grid, Exec exec) {
  if (!dataset.labels) {
    throw DomainError("run_sweep requires ground-truth labels");
  }
  if (!dataset.truth_relations) {
    throw DomainError("run_sweep requires ground-truth relations");
  }
  if (lambda_grid.empty()) {
    throw ConfigError("run_sweep: empty lambda grid");
  }

  struct Point {
    real lambda;
    real alpha;
  };
  std::vector<Point> points;
  if (alpha_grid.empty()) {
    for (real l : lambda_grid) points.push_back({l, base.solver.alpha});
  } else {
    for (real l : lambda_grid) {
      for (real a : alpha_grid) points.push_back({l, a});
    }
  }

  SweepResult sweep;
  sweep.alpha_swept = !alpha_grid.empty();
  sweep.rows.resize(points.size());

  const auto eval_point = [&](std::size_t idx) {
    PipelineOptions opt = base;
    opt.solver.lambda = points[idx].lambda;
    opt.solver.alpha = points[idx].alpha;
    opt.solver.seed = base.solver.seed + idx;
    opt.timing = false;
    const RunReport rep = run_pipeline(dataset, opt);
    SweepRow row;
    row.lambda = points[idx].lambda;
    row.alpha = points[idx].alpha;
    if (rep.metrics) {
      row.nmi = rep.metrics->nmi;
      row.ari = rep.metrics->ari;
      row.purity = rep.metrics->purity;
    }
    if (rep.relation_accuracy) {
      row.correct_relations = rep.relation_accuracy->correct;
      row.total_relations = rep.relation_accuracy->total;
    }
    sweep.rows[idx] = row;
  };

  if (exec == Exec::Par && points.size() > 1) {
    std::vector<std::future<void>> futures;
    futures.reserve(points.size());
    for (std::size_t i = 0; i < points.size(); ++i) {
      futures.push_back(std::async(std::launch::async, eval_point, i));
    }
    for (auto& f : futures) f.get();
  } else {
    for (std::size_t i = 0; i < points.size(); ++i) eval_point(i);
  }

  sweep.best_row = 0;
  for (std::size_t i = 1; i < sweep.rows.size(); ++i) {
    const SweepRow& cand = sweep.rows[i];
    const SweepRow& best = sweep.rows[sweep.best_row];
    if (cand.nmi > best.nmi ||
        (cand.nmi == best.nmi &&
         cand.correct_relations > best.correct_relations)) {
      sweep.best_row = i;
    }
  }
  return sweep;
}

std::string sweep_to_csv(const SweepResult& sweep) {
  std::ostringstream out;
  if (sweep.alpha_swept) {
    out << "lambda,alpha,nmi,ari,purity,correct_relations,total_relations\n";
  } else {
    out << "lambda,nmi,ari,purity,correct_relations,total_relations\n";
  }
  for (const SweepRow& row : sweep.rows) {
    out << format_real(row.lambda) << ",";
    if (sweep.alpha_swept) out << format_real(row.alpha) << ",";
    out << format_real(row.nmi) << "," << format_real(row.ari) << ","
        << format_real(row.purity) << "," << row.correct_relations << ","
        << row.total_relations << "\n";
  }
  if (!sweep.rows.empty()) {
    const SweepRow& best = sweep.rows[sweep.best_row];
    out << "# best lambda " << format_real(best.lambda);
    if (sweep.alpha_swept) out << " alpha " << format_real(best.alpha);
    out << " with nmi " << format_real(best.nmi) << " and "
        << best.correct_relations << "/" << best.total_relations
        << " correct relations\n";
  }
  return out.str();
}

std::vector<real> default_lambda_grid() {
  std::vector<real> grid;
  real value = 1.0;
  for (int i = 0; i < 10; ++i) {
    grid.push_back(value);
    value *= 10.0;
  }
  return grid;
}

}  // namespace daac
