// Copyright 2026 The DAAC Authors
// SPDX-License-Identifier: Apache-2.0
//
// Command-line front end. Subcommands: fit, two-step, sweep, synth,
// hypothesis. Exit codes: 0 success, 2 argument errors, 3 input parse or
// data errors, 4 configuration errors rejected by the solver or generator.

#include <unistd.h>

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "daac/analysis.hpp"
#include "daac/ingest.hpp"
#include "daac/pipeline.hpp"
#include "daac/report.hpp"
#include "daac/stats.hpp"
#include "daac/synth.hpp"

namespace {

using daac::index;
using daac::real;

struct DataArgs {
  std::string interactions;
  std::string attitudes;
  std::string labels;
  std::string truth_relations;
  bool symmetrize_attitudes = false;
};

struct FitArgs {
  DataArgs data;
  index k = 0;
  real lambda = 1e6;
  real alpha = 1e-3;
  real tol = 1e-6;
  index max_iters = 500;
  index restarts = 5;
  real tau = 0.05;
  std::uint64_t seed = 42;
  std::string out;
  std::string format = "json";
  bool timing = false;
  bool parallel = false;
};

struct SweepArgs {
  FitArgs fit;
  std::vector<real> lambda_grid;
  std::vector<real> alpha_grid;
};

struct SynthArgs {
  index n = 0;
  index k = 2;
  real p_in = 0.3;
  real p_out = 0.02;
  real w_in_mean = 1.0;
  real p_att_in = 0.1;
  real p_att_out = 0.05;
  real att_strength = 1.0;
  real noise = 0.0;
  std::string relations = "all-antagonism";
  std::string preset;
  std::uint64_t seed = 42;
  std::string out_dir;
};

struct HypothesisArgs {
  DataArgs data;
  std::uint64_t seed = 42;
  real alpha = 0.01;
  bool permutation = false;
  std::string format = "text";
  std::string out;
};

void add_data_options(CLI::App* cmd, DataArgs* args, bool labels_required) {
  cmd->add_option("--interactions", args->interactions,
                  "TSV of src, dst, weight")
      ->required();
  cmd->add_option("--attitudes", args->attitudes,
                  "TSV of author, target, sentiment")
      ->required();
  auto* labels = cmd->add_option("--labels", args->labels,
                                 "TSV of user, ground-truth label");
  auto* truth = cmd->add_option("--truth-relations", args->truth_relations,
                                "TSV of label, label, relation");
  if (labels_required) {
    labels->required();
    truth->required();
  }
  cmd->add_flag("--symmetrize-attitudes", args->symmetrize_attitudes,
                "Replace the attitude matrix with its symmetric sum");
}

void add_fit_options(CLI::App* cmd, FitArgs* args, bool labels_required) {
  add_data_options(cmd, &args->data, labels_required);
  cmd->add_option("--k", args->k, "Number of communities")->required();
  cmd->add_option("--lambda", args->lambda, "Interaction regularizer weight");
  cmd->add_option("--alpha", args->alpha, "Initial relation-step size");
  cmd->add_option("--tol", args->tol, "Convergence tolerance");
  cmd->add_option("--max-iters", args->max_iters, "Iteration cap");
  cmd->add_option("--restarts", args->restarts, "Random restarts");
  cmd->add_option("--tau", args->tau, "Relation significance threshold");
  cmd->add_option("--seed", args->seed, "Random seed");
  cmd->add_option("--out", args->out, "Output path (default stdout)");
  cmd->add_option("--format", args->format, "Report format")
      ->check(CLI::IsMember({"json", "table"}));
  cmd->add_flag("--timing", args->timing, "Record wall-clock time");
  cmd->add_flag("--parallel", args->parallel, "Use the parallel kernels");
}

daac::LabeledDataset load_dataset(const DataArgs& args) {
  const daac::InteractionTable interactions =
      daac::load_interactions(args.interactions);
  const daac::MentionTable mentions = daac::load_mentions(args.attitudes);
  std::optional<std::map<std::string, std::string>> labels;
  if (!args.labels.empty()) labels = daac::load_labels(args.labels);
  std::optional<daac::TruthRelations> truth;
  if (!args.truth_relations.empty()) {
    truth = daac::load_truth_relations(args.truth_relations);
  }
  daac::BuildOptions options;
  options.symmetrize_attitudes = args.symmetrize_attitudes;
  return daac::build_dataset(interactions, mentions, labels, truth, options);
}

void emit(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(out_path);
  if (!out) {
    throw daac::ParseError("cannot write " + out_path);
  }
  out << text;
}

daac::PipelineOptions pipeline_options(const FitArgs& args, bool two_step) {
  daac::PipelineOptions options;
  options.solver.k = args.k;
  options.solver.lambda = args.lambda;
  options.solver.alpha = args.alpha;
  options.solver.tol = args.tol;
  options.solver.max_iters = args.max_iters;
  options.solver.restarts = args.restarts;
  options.solver.seed = args.seed;
  options.solver.exec = args.parallel ? daac::Exec::Par : daac::Exec::Seq;
  options.tau = args.tau;
  options.two_step = two_step;
  options.timing = args.timing;
  return options;
}

int run_fit(const FitArgs& args, bool two_step) {
  const daac::LabeledDataset dataset = load_dataset(args.data);
  const daac::RunReport report =
      daac::run_pipeline(dataset, pipeline_options(args, two_step));
  if (args.format == "table") {
    const bool color = args.out.empty() && isatty(STDOUT_FILENO) != 0;
    emit(daac::render_table(report, color), args.out);
  } else {
    emit(daac::to_json_string(report), args.out);
  }
  return 0;
}

int run_sweep_cmd(const SweepArgs& args) {
  const daac::LabeledDataset dataset = load_dataset(args.fit.data);
  const std::vector<real> lambdas = args.lambda_grid.empty()
                                        ? daac::default_lambda_grid()
                                        : args.lambda_grid;
  const daac::Exec exec =
      args.fit.parallel ? daac::Exec::Par : daac::Exec::Seq;
  const daac::SweepResult sweep = daac::run_sweep(
      dataset, pipeline_options(args.fit, false), lambdas, args.alpha_grid,
      exec);
  emit(daac::sweep_to_csv(sweep), args.fit.out);
  return 0;
}

int run_synth(const SynthArgs& args) {
  daac::PlantedSpec spec;
  if (!args.preset.empty()) {
    if (args.preset != "australia-like") {
      std::cerr << "error: unknown preset '" << args.preset << "'\n";
      return 2;
    }
    spec = daac::australia_like_spec(args.seed);
  } else {
    if (args.n <= 0) {
      std::cerr << "error: --n is required without --preset\n";
      return 2;
    }
    spec.n = args.n;
    spec.k = args.k;
    spec.p_in = args.p_in;
    spec.p_out = args.p_out;
    spec.w_in_mean = args.w_in_mean;
    spec.p_att_in = args.p_att_in;
    spec.p_att_out = args.p_att_out;
    spec.att_strength = args.att_strength;
    spec.noise = args.noise;
    spec.seed = args.seed;
    if (args.relations == "all-antagonism") {
      spec.relations = daac::all_antagonism(spec.k);
    } else {
      const daac::TruthRelations truth =
          daac::load_truth_relations(args.relations);
      spec.relations.assign(
          static_cast<std::size_t>(spec.k) * static_cast<std::size_t>(spec.k),
          daac::Relation::None);
      for (const auto& [pair, rel] : truth) {
        const auto community_of = [&](const std::string& name) {
          for (index c = 0; c < spec.k; ++c) {
            if (name == "c" + std::to_string(c)) return c;
          }
          throw daac::ParseError(args.relations + ": relation names must be " +
                                 "c0 .. c" + std::to_string(spec.k - 1) +
                                 ", got '" + name + "'");
        };
        spec.set_relation(community_of(pair.first), community_of(pair.second),
                          rel);
      }
    }
  }
  const daac::PlantedInstance instance = daac::generate(spec);
  daac::write_instance(instance, args.out_dir);
  index antagonism = 0;
  index alliance = 0;
  for (const auto& [pair, rel] : instance.truth) {
    if (rel == daac::Relation::Antagonism) ++antagonism;
    if (rel == daac::Relation::Alliance) ++alliance;
  }
  std::cout << "wrote " << instance.user_ids.size() << " users, " << spec.k
            << " communities, " << antagonism << " antagonism + " << alliance
            << " alliance truth pairs to " << args.out_dir << "\n";
  return 0;
}

nlohmann::ordered_json test_to_json(const daac::TTestResult& r,
                                    const daac::MatchedSamples& samples) {
  nlohmann::ordered_json j;
  j["t_statistic"] = r.t_statistic;
  j["degrees_of_freedom"] = r.degrees_of_freedom;
  j["p_value"] = r.p_value;
  j["log_p"] = r.log_p;
  j["reject_at"] = r.reject_at;
  j["rejected"] = r.rejected;
  j["n_treatment"] = r.n_treatment;
  j["n_control"] = r.n_control;
  j["mean_treatment"] = r.mean_treatment;
  j["mean_control"] = r.mean_control;
  j["pairs_skipped"] = samples.pairs_skipped;
  return j;
}

void render_test_line(std::ostream& out, const char* name,
                      const daac::TTestResult& r) {
  out << name << ": t " << daac::format_real(r.t_statistic) << ", df "
      << daac::format_real(r.degrees_of_freedom) << ", p "
      << daac::format_real(r.p_value) << ", log-p "
      << daac::format_real(r.log_p) << ", "
      << (r.rejected ? "rejected" : "not rejected") << " at alpha "
      << daac::format_real(r.reject_at) << "\n";
}

int run_hypothesis(const HypothesisArgs& args) {
  const daac::LabeledDataset dataset = load_dataset(args.data);
  if (!dataset.labels || !dataset.truth_relations) {
    std::cerr << "error: hypothesis needs --labels and --truth-relations\n";
    return 2;
  }
  daac::HypothesisOptions options;
  options.alpha = args.alpha;
  options.use_permutation = args.permutation;
  const daac::HypothesisReport report = daac::validate_hypothesis(
      dataset.S, *dataset.labels, *dataset.truth_relations,
      static_cast<unsigned>(args.seed), options);
  if (args.format == "json") {
    nlohmann::ordered_json j;
    j["negative"] = test_to_json(report.negative, report.negative_samples);
    j["positive"] = test_to_json(report.positive, report.positive_samples);
    emit(j.dump(2) + "\n", args.out);
  } else {
    std::ostringstream out;
    render_test_line(out, "negative attitudes vs antagonism", report.negative);
    render_test_line(out, "positive attitudes vs alliance", report.positive);
    out << "matched pairs: " << report.negative_samples.treatment.size()
        << " negative (" << report.negative_samples.pairs_skipped
        << " skipped), " << report.positive_samples.treatment.size()
        << " positive (" << report.positive_samples.pairs_skipped
        << " skipped)\n";
    emit(out.str(), args.out);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Detects antagonistic and allied communities from social interaction "
      "and attitude data"};
  app.require_subcommand(1);

  FitArgs fit_args;
  auto* fit_cmd = app.add_subcommand(
      "fit", "Joint factorization of interactions and attitudes");
  add_fit_options(fit_cmd, &fit_args, false);

  FitArgs two_step_args;
  auto* two_step_cmd = app.add_subcommand(
      "two-step", "Communities from interactions, then aggregated attitudes");
  add_fit_options(two_step_cmd, &two_step_args, false);

  SweepArgs sweep_args;
  auto* sweep_cmd =
      app.add_subcommand("sweep", "Fit once per lambda and tabulate metrics");
  add_fit_options(sweep_cmd, &sweep_args.fit, true);
  sweep_cmd->add_option("--lambda-grid", sweep_args.lambda_grid,
                        "Lambda values (default 1e0 .. 1e9)");
  sweep_cmd->add_option("--alpha-grid", sweep_args.alpha_grid,
                        "Optional alpha values to cross with the lambda grid");

  SynthArgs synth_args;
  auto* synth_cmd =
      app.add_subcommand("synth", "Generate a planted benchmark dataset");
  synth_cmd->add_option("--n", synth_args.n, "Number of users");
  synth_cmd->add_option("--k", synth_args.k, "Number of communities");
  synth_cmd->add_option("--p-in", synth_args.p_in,
                        "Intra-community interaction probability");
  synth_cmd->add_option("--p-out", synth_args.p_out,
                        "Inter-community interaction probability");
  synth_cmd->add_option("--w-in-mean", synth_args.w_in_mean,
                        "Mean extra interaction weight");
  synth_cmd->add_option("--p-att-in", synth_args.p_att_in,
                        "Intra-community attitude probability");
  synth_cmd->add_option("--p-att-out", synth_args.p_att_out,
                        "Cross-community attitude probability");
  synth_cmd->add_option("--att-strength", synth_args.att_strength,
                        "Attitude magnitude");
  synth_cmd->add_option("--noise", synth_args.noise,
                        "Attitude sign-flip probability");
  synth_cmd->add_option("--relations", synth_args.relations,
                        "Truth relations TSV or 'all-antagonism'");
  synth_cmd->add_option("--preset", synth_args.preset,
                        "Named dataset preset (australia-like)");
  synth_cmd->add_option("--seed", synth_args.seed, "Random seed");
  synth_cmd->add_option("--out-dir", synth_args.out_dir, "Output directory")
      ->required();

  HypothesisArgs hyp_args;
  auto* hyp_cmd = app.add_subcommand(
      "hypothesis", "Matched-sample tests linking attitudes to relations");
  add_data_options(hyp_cmd, &hyp_args.data, true);
  hyp_cmd->add_option("--seed", hyp_args.seed, "Sampling seed");
  hyp_cmd->add_option("--alpha", hyp_args.alpha, "Rejection level");
  hyp_cmd->add_flag("--permutation", hyp_args.permutation,
                    "Use the exact permutation test instead of Welch");
  hyp_cmd->add_option("--format", hyp_args.format, "Report format")
      ->check(CLI::IsMember({"json", "text"}));
  hyp_cmd->add_option("--out", hyp_args.out, "Output path (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (fit_cmd->parsed()) return run_fit(fit_args, false);
    if (two_step_cmd->parsed()) return run_fit(two_step_args, true);
    if (sweep_cmd->parsed()) return run_sweep_cmd(sweep_args);
    if (synth_cmd->parsed()) return run_synth(synth_args);
    if (hyp_cmd->parsed()) return run_hypothesis(hyp_args);
  } catch (const daac::ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 4;
  } catch (const daac::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const daac::DomainError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const daac::ConsistencyError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const daac::DimensionError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const daac::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
