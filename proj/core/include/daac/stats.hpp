// Copyright 2026 The DAAC Authors
// SPDX-License-Identifier: Apache-2.0
//
// Hypothesis testing for relation validity. Matched sampling pairs each
// signed cross-label attitude with a random control target, then a one-sided
// two-sample test asks whether the signed pairs land on truth relations of
// the matching kind more often than the controls do.

#ifndef DAAC_STATS_HPP
#define DAAC_STATS_HPP

#include <string>
#include <vector>

#include "daac/common.hpp"
#include "daac/sparse_matrix.hpp"

namespace daac {

// Which attitude sign drives the sampling: Negative pairs are tested against
// antagonism truth, Positive pairs against alliance truth.
enum class HypothesisMode { Negative, Positive };

struct MatchedPair {
  index i = 0;  // attitude source
  index j = 0;  // attitude target (treatment)
  index k = 0;  // sampled control target
};

struct MatchedSamples {
  std::vector<real> treatment;
  std::vector<real> control;
  std::vector<MatchedPair> pair_log;
  // Pairs abandoned because no admissible control was found within the
  // attempt budget. Skipping keeps |treatment| == |control|.
  index pairs_skipped = 0;
};

struct TTestResult {
  real t_statistic = 0.0;
  real degrees_of_freedom = 0.0;
  real p_value = 0.0;
  real log_p = 0.0;
  real reject_at = 0.0;
  bool rejected = false;
  index n_treatment = 0;
  index n_control = 0;
  real mean_treatment = 0.0;
  real mean_control = 0.0;
};

// Builds matched treatment/control indicator samples for one mode. Every
// ordered attitude entry (i, j) with differing labels and the mode's sign
// becomes a treatment observation; its control is a uniformly sampled user k
// with a different label than i and no mode-signed attitude from i. Controls
// are drawn before the treatment indicator is recorded; if no control is
// accepted within max_control_attempts draws the pair is skipped entirely.
MatchedSamples matched_sample(const SparseMatrix& S,
                              const std::vector<std::string>& labels,
                              const TruthRelations& truth, HypothesisMode mode,
                              Rng& rng, index max_control_attempts = 1000);

// One-sided Welch t-test of H1: mean(treatment) > mean(control).
// Both samples need at least two observations and a nonzero combined
// variance. The p-value comes from the regularized incomplete beta function
// evaluated in log space, so log_p stays meaningful far into the tail.
TTestResult welch_t_test_one_sided(const std::vector<real>& treatment,
                                   const std::vector<real>& control,
                                   real alpha = 0.01);

// Pooled-variance variant (classic two-sample t) kept for comparison runs.
TTestResult pooled_t_test_one_sided(const std::vector<real>& treatment,
                                    const std::vector<real>& control,
                                    real alpha = 0.01);

// Exact one-sided test for binary indicator samples: the p-value is the
// hypergeometric tail probability of drawing at least the observed number of
// treatment successes under random reassignment of the pooled successes.
// Usable when the t-test preconditions fail (for example zero variance).
TTestResult permutation_test_one_sided(const std::vector<real>& treatment,
                                       const std::vector<real>& control,
                                       real alpha = 0.01);

// log of the regularized incomplete beta function I_x(a, b). Exposed for
// testing; domain errors on a <= 0, b <= 0, or x outside [0, 1].
real log_beta_inc(real a, real b, real x);

struct HypothesisOptions {
  real alpha = 0.01;
  bool use_permutation = false;
  index max_control_attempts = 1000;
};

struct HypothesisReport {
  TTestResult negative;
  TTestResult positive;
  MatchedSamples negative_samples;
  MatchedSamples positive_samples;
};

// Runs both modes against the same attitude matrix with mode-specific rng
// streams derived from seed. Labels must cover every row of S and truth must
// be non-empty.
HypothesisReport validate_hypothesis(const SparseMatrix& S,
                                     const std::vector<std::string>& labels,
                                     const TruthRelations& truth, unsigned seed,
                                     const HypothesisOptions& options = {});

}  // namespace daac

#endif  // DAAC_STATS_HPP
