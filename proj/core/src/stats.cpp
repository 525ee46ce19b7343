// Copyright 2026 The DAAC Authors
// SPDX-License-Identifier: Apache-2.0

#include "daac/stats.hpp"

#include <cmath>
#include <limits>

namespace daac {

namespace {

real truth_indicator(const TruthRelations& truth, const std::string& a,
                     const std::string& b, HypothesisMode mode) {
  const auto it = truth.find(normalized_pair(a, b));
  const Relation rel = it == truth.end() ? Relation::None : it->second;
  const Relation want = mode == HypothesisMode::Negative ? Relation::Antagonism
                                                         : Relation::Alliance;
  return rel == want ? 1.0 : 0.0;
}

bool mode_signed(real value, HypothesisMode mode) {
  return mode == HypothesisMode::Negative ? value < 0.0 : value > 0.0;
}

real sample_mean(const std::vector<real>& xs) {
  real sum = 0.0;
  for (real x : xs) sum += x;
  return sum / static_cast<real>(xs.size());
}

real sample_variance(const std::vector<real>& xs, real mean) {
  real sum = 0.0;
  for (real x : xs) sum += (x - mean) * (x - mean);
  return sum / static_cast<real>(xs.size() - 1);
}

void require_two_samples(const std::vector<real>& treatment,
                         const std::vector<real>& control) {
  if (treatment.size() < 2 || control.size() < 2) {
    throw DomainError("t-test requires at least two observations per sample");
  }
}

// Continued fraction for the incomplete beta function, modified Lentz method.
real beta_cf(real a, real b, real x) {
  constexpr real kFpMin = 1e-300;
  constexpr real kEps = 3e-16;
  constexpr int kMaxIter = 300;
  const real qab = a + b;
  const real qap = a + 1.0;
  const real qam = a - 1.0;
  real c = 1.0;
  real d = 1.0 - qab * x / qap;
  if (std::fabs(d) < kFpMin) d = kFpMin;
  d = 1.0 / d;
  real h = d;
  for (int m = 1; m <= kMaxIter; ++m) {
    const int m2 = 2 * m;
    real aa = m * (b - m) * x / ((qam + m2) * (a + m2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < kFpMin) d = kFpMin;
    c = 1.0 + aa / c;
    if (std::fabs(c) < kFpMin) c = kFpMin;
    d = 1.0 / d;
    h *= d * c;
    aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < kFpMin) d = kFpMin;
    c = 1.0 + aa / c;
    if (std::fabs(c) < kFpMin) c = kFpMin;
    d = 1.0 / d;
    const real del = d * c;
    h *= del;
    if (std::fabs(del - 1.0) < kEps) return h;
  }
  throw NumericalError(
      "incomplete beta continued fraction failed to converge");
}

real log_beta_inc_direct(real a, real b, real x) {
  const real log_beta =
      std::lgamma(a) + std::lgamma(b) - std::lgamma(a + b);
  const real front =
      a * std::log(x) + b * std::log1p(-x) - std::log(a) - log_beta;
  return front + std::log(beta_cf(a, b, x));
}

// p-value of the one-sided test H1: mean difference > 0, for Student's t
// with the given degrees of freedom. Returns {p, log_p}.
std::pair<real, real> upper_tail_p(real t, real df) {
  constexpr real kLogHalf = -0.6931471805599453;
  if (t == 0.0) return {0.5, kLogHalf};
  const real x = df / (df + t * t);
  const real log_i = log_beta_inc(0.5 * df, 0.5, x);
  const real log_q = kLogHalf + log_i;
  if (t > 0.0) {
    return {std::exp(log_q), log_q};
  }
  const real q = std::exp(log_q);
  if (q >= 1.0) {
    return {0.0, -std::numeric_limits<real>::infinity()};
  }
  // Plain subtraction keeps the swap antisymmetry p(a,b) = 1 - p(b,a)
  // bitwise exact: both sides evaluate 1.0 - q on the same q.
  return {1.0 - q, std::log1p(-q)};
}

TTestResult finish(real t, real df, real alpha, const std::vector<real>& a,
                   const std::vector<real>& b, real mean_a, real mean_b) {
  TTestResult res;
  res.t_statistic = t;
  res.degrees_of_freedom = df;
  const auto [p, log_p] = upper_tail_p(t, df);
  res.p_value = std::min(std::max(p, 0.0), 1.0);
  res.log_p = log_p;
  res.reject_at = alpha;
  res.rejected = res.p_value < alpha;
  res.n_treatment = static_cast<index>(a.size());
  res.n_control = static_cast<index>(b.size());
  res.mean_treatment = mean_a;
  res.mean_control = mean_b;
  return res;
}

}  // namespace

real log_beta_inc(real a, real b, real x) {
  if (a <= 0.0 || b <= 0.0) {
    throw DomainError("log_beta_inc requires positive shape parameters");
  }
  if (x < 0.0 || x > 1.0) {
    throw DomainError("log_beta_inc requires x in [0, 1]");
  }
  if (x == 0.0) return -std::numeric_limits<real>::infinity();
  if (x == 1.0) return 0.0;
  if (x < (a + 1.0) / (a + b + 2.0)) {
    return log_beta_inc_direct(a, b, x);
  }
  const real complement = std::exp(log_beta_inc_direct(b, a, 1.0 - x));
  if (complement >= 1.0) return -std::numeric_limits<real>::infinity();
  return std::log1p(-complement);
}

MatchedSamples matched_sample(const SparseMatrix& S,
                              const std::vector<std::string>& labels,
                              const TruthRelations& truth, HypothesisMode mode,
                              Rng& rng, index max_control_attempts) {
  if (S.rows() != S.cols()) {
    throw DimensionError("matched_sample: attitude matrix must be square");
  }
  if (static_cast<index>(labels.size()) != S.rows()) {
    throw DimensionError("matched_sample: one label per user required");
  }
  const index n = S.rows();
  MatchedSamples out;
  for (index i = 0; i < n; ++i) {
    const index begin = S.row_offsets()[static_cast<std::size_t>(i)];
    const index end = S.row_offsets()[static_cast<std::size_t>(i) + 1];
    for (index p = begin; p < end; ++p) {
      const index j = S.col_indices()[static_cast<std::size_t>(p)];
      const real value = S.values()[static_cast<std::size_t>(p)];
      if (j == i) continue;
      if (!mode_signed(value, mode)) continue;
      const auto& li = labels[static_cast<std::size_t>(i)];
      if (li == labels[static_cast<std::size_t>(j)]) continue;

      // Control first, so a skipped pair consumes the same rng draws on
      // every run and the two samples stay the same length.
      index control = -1;
      for (index attempt = 0; attempt < max_control_attempts; ++attempt) {
        const index k = rng.uniform_index(n);
        if (k == i) continue;
        if (labels[static_cast<std::size_t>(k)] == li) continue;
        if (mode_signed(S.at(i, k), mode)) continue;
        control = k;
        break;
      }
      if (control < 0) {
        ++out.pairs_skipped;
        continue;
      }
      out.treatment.push_back(
          truth_indicator(truth, li, labels[static_cast<std::size_t>(j)], mode));
      out.control.push_back(truth_indicator(
          truth, li, labels[static_cast<std::size_t>(control)], mode));
      out.pair_log.push_back({i, j, control});
    }
  }
  return out;
}

TTestResult welch_t_test_one_sided(const std::vector<real>& treatment,
                                   const std::vector<real>& control,
                                   real alpha) {
  require_two_samples(treatment, control);
  const real np = static_cast<real>(treatment.size());
  const real nr = static_cast<real>(control.size());
  const real mp = sample_mean(treatment);
  const real mr = sample_mean(control);
  const real vp = sample_variance(treatment, mp);
  const real vr = sample_variance(control, mr);
  const real se2 = vp / np + vr / nr;
  if (se2 <= 0.0) {
    throw DomainError(
        "welch_t_test_one_sided: both samples have zero variance; use "
        "permutation_test_one_sided instead");
  }
  const real t = (mp - mr) / std::sqrt(se2);
  const real denom = (vp / np) * (vp / np) / (np - 1.0) +
                     (vr / nr) * (vr / nr) / (nr - 1.0);
  const real df = se2 * se2 / denom;
  return finish(t, df, alpha, treatment, control, mp, mr);
}

TTestResult pooled_t_test_one_sided(const std::vector<real>& treatment,
                                    const std::vector<real>& control,
                                    real alpha) {
  require_two_samples(treatment, control);
  const real np = static_cast<real>(treatment.size());
  const real nr = static_cast<real>(control.size());
  const real mp = sample_mean(treatment);
  const real mr = sample_mean(control);
  const real vp = sample_variance(treatment, mp);
  const real vr = sample_variance(control, mr);
  const real df = np + nr - 2.0;
  const real pooled = ((np - 1.0) * vp + (nr - 1.0) * vr) / df;
  if (pooled <= 0.0) {
    throw DomainError(
        "pooled_t_test_one_sided: pooled variance is zero; use "
        "permutation_test_one_sided instead");
  }
  const real t = (mp - mr) / std::sqrt(pooled * (1.0 / np + 1.0 / nr));
  return finish(t, df, alpha, treatment, control, mp, mr);
}

TTestResult permutation_test_one_sided(const std::vector<real>& treatment,
                                       const std::vector<real>& control,
                                       real alpha) {
  if (treatment.empty() || control.empty()) {
    throw DomainError("permutation test requires non-empty samples");
  }
  index successes = 0;
  index observed = 0;
  for (real x : treatment) {
    if (x != 0.0 && x != 1.0) {
      throw DomainError("permutation test requires binary indicators");
    }
    if (x == 1.0) ++observed;
  }
  successes = observed;
  for (real x : control) {
    if (x != 0.0 && x != 1.0) {
      throw DomainError("permutation test requires binary indicators");
    }
    if (x == 1.0) ++successes;
  }
  const index np = static_cast<index>(treatment.size());
  const index total = np + static_cast<index>(control.size());

  // Tail probability of >= observed treatment successes when the pooled
  // successes are redistributed uniformly, i.e. the hypergeometric tail.
  const auto log_choose = [](index n, index k) {
    return std::lgamma(static_cast<real>(n + 1)) -
           std::lgamma(static_cast<real>(k + 1)) -
           std::lgamma(static_cast<real>(n - k + 1));
  };
  const real log_denom = log_choose(total, np);
  const index hi = std::min(successes, np);
  real p = 0.0;
  for (index a = observed; a <= hi; ++a) {
    if (np - a > total - successes) continue;
    p += std::exp(log_choose(successes, a) +
                  log_choose(total - successes, np - a) - log_denom);
  }
  p = std::min(std::max(p, 0.0), 1.0);

  const real mp = sample_mean(treatment);
  const real mr = sample_mean(control);
  TTestResult res;
  res.t_statistic = mp - mr;
  res.degrees_of_freedom = 0.0;
  res.p_value = p;
  res.log_p = p > 0.0 ? std::log(p) : -std::numeric_limits<real>::infinity();
  res.reject_at = alpha;
  res.rejected = p < alpha;
  res.n_treatment = np;
  res.n_control = static_cast<index>(control.size());
  res.mean_treatment = mp;
  res.mean_control = mr;
  return res;
}

HypothesisReport validate_hypothesis(const SparseMatrix& S,
                                     const std::vector<std::string>& labels,
                                     const TruthRelations& truth, unsigned seed,
                                     const HypothesisOptions& options) {
  if (truth.empty()) {
    throw DomainError("validate_hypothesis requires truth relations");
  }
  const auto run_mode = [&](HypothesisMode mode, unsigned mode_seed,
                            TTestResult& result, MatchedSamples& samples) {
    Rng rng(mode_seed);
    samples = matched_sample(S, labels, truth, mode, rng,
                             options.max_control_attempts);
    try {
      if (options.use_permutation) {
        result = permutation_test_one_sided(samples.treatment, samples.control,
                                            options.alpha);
      } else {
        result = welch_t_test_one_sided(samples.treatment, samples.control,
                                        options.alpha);
      }
    } catch (const DomainError& e) {
      const char* name =
          mode == HypothesisMode::Negative ? "negative" : "positive";
      throw DomainError(std::string(name) + " mode: " + e.what());
    }
  };
  HypothesisReport report;
  run_mode(HypothesisMode::Negative, seed, report.negative,
           report.negative_samples);
  run_mode(HypothesisMode::Positive, seed + 1, report.positive,
           report.positive_samples);
  return report;
}

}  // namespace daac
