// Copyright 2026 The DAAC Authors
// SPDX-License-Identifier: Apache-2.0

#include "daac/solver.hpp"

#include <algorithm>
#include <cmath>

namespace daac {

namespace {

// Tr(U^T A U) = sum over A's nonzeros of A_ij * (U_i . U_j).
real sparse_quadratic_trace(const SparseMatrix& A, const DenseMatrix& U) {
  const index k = U.cols();
  const auto& offsets = A.row_offsets();
  const auto& cols = A.col_indices();
  const auto& values = A.values();
  real acc = 0.0;
  for (index r = 0; r < A.rows(); ++r) {
    const real* urow = U.data() + r * k;
    for (index p = offsets[static_cast<std::size_t>(r)];
         p < offsets[static_cast<std::size_t>(r) + 1]; ++p) {
      const real* vrow = U.data() + cols[static_cast<std::size_t>(p)] * k;
      real dot = 0.0;
      for (index l = 0; l < k; ++l) dot += urow[l] * vrow[l];
      acc += values[static_cast<std::size_t>(p)] * dot;
    }
  }
  return acc;
}

void check_solver_shapes(const SparseMatrix& S, const SparseMatrix& W,
                         const SparseMatrix& R_norm, const DenseMatrix& U,
                         const DenseMatrix& H) {
  const index n = U.rows();
  const index k = U.cols();
  if (S.rows() != n || S.cols() != n || W.rows() != n || W.cols() != n ||
      R_norm.rows() != n || R_norm.cols() != n || H.rows() != k ||
      H.cols() != k) {
    throw DimensionError("solver: S, W, R_norm must be n x n and H k x k");
  }
}

struct RunOutcome {
  DenseMatrix U;
  DenseMatrix H;
  std::vector<real> trace;
  bool converged = false;
  index iterations = 0;
};

RunOutcome run_single(const SparseMatrix& S, const SparseMatrix& W,
                      const SparseMatrix& R_norm, const SolverConfig& config,
                      std::uint64_t seed) {
  const index n = R_norm.rows();
  const index k = config.k;

  Rng rng(seed);
  DenseMatrix U(n, k);
  for (index i = 0; i < n; ++i)
    for (index l = 0; l < k; ++l) U(i, l) = rng.uniform(0.1, 1.1);
  DenseMatrix H(k, k);
  for (index i = 0; i < k; ++i)
    for (index l = 0; l < k; ++l) H(i, l) = rng.uniform(-0.1, 0.1);

  RunOutcome out;
  out.trace.push_back(objective(S, W, R_norm, U, H, config.lambda, config.exec));

  const real settle_tol = 10.0 * config.tol;

  for (index iter = 1; iter <= config.max_iters; ++iter) {
    SolverState state{U, H, iter - 1, out.trace.back()};
    const UpdateIntermediates inter =
        compute_intermediates(S, W, U, H, R_norm, config.lambda, config.exec);
    DenseMatrix U_next =
        update_u(state, inter, R_norm, config.lambda, config.eps_div);

    const DenseMatrix grad = grad_h(S, W, U_next, H, config.exec);
    auto objective_at = [&](const DenseMatrix& h_candidate) {
      return objective(S, W, R_norm, U_next, h_candidate, config.lambda,
                       config.exec);
    };
    auto [H_next, step] = update_h(H, grad, config.alpha, objective_at,
                                   config.backtracking, config.max_backtracks);
    (void)step;

    const real f = objective_at(H_next);
    if (!std::isfinite(f)) {
      throw NumericalError(
          "fit: objective became non-finite at iteration " +
          std::to_string(iter) +
          " (diverging run; consider a larger lambda or smaller alpha)");
    }

    const real f_prev = out.trace.back();
    const real delta_u = U_next.max_abs_diff(U);
    const real delta_h = H_next.max_abs_diff(H);
    U = std::move(U_next);
    H = std::move(H_next);
    out.trace.push_back(f);
    out.iterations = iter;

    const bool objective_settled =
        std::abs(f - f_prev) / (std::abs(f_prev) + 1e-12) < config.tol;
    const bool u_settled = delta_u <= settle_tol * std::max(1.0, U.max_abs());
    const bool h_settled = delta_h <= settle_tol * std::max(1.0, H.max_abs());
    if (objective_settled && u_settled && h_settled) {
      out.converged = true;
      break;
    }
  }

  out.U = std::move(U);
  out.H = std::move(H);
  return out;
}

}  // namespace

void SolverConfig::validate() const {
  if (k < 2) throw ConfigError("SolverConfig: k must be >= 2");
  if (lambda < 0.0) throw ConfigError("SolverConfig: lambda must be >= 0");
  if (!(alpha > 0.0)) throw ConfigError("SolverConfig: alpha must be > 0");
  if (!(tol > 0.0)) throw ConfigError("SolverConfig: tol must be > 0");
  if (!(eps_div > 0.0)) throw ConfigError("SolverConfig: eps_div must be > 0");
  if (max_iters < 1) throw ConfigError("SolverConfig: max_iters must be >= 1");
  if (max_backtracks < 0) {
    throw ConfigError("SolverConfig: max_backtracks must be >= 0");
  }
  if (restarts < 1) throw ConfigError("SolverConfig: restarts must be >= 1");
}

real objective(const SparseMatrix& S, const SparseMatrix& W,
               const SparseMatrix& R_norm, const DenseMatrix& U,
               const DenseMatrix& H, real lambda, Exec exec) {
  check_solver_shapes(S, W, R_norm, U, H);
  const real resid = frobenius_sq_masked(W, S, U, H, exec);
  const real trace = sparse_quadratic_trace(R_norm, U);
  return resid - lambda * trace;
}

UpdateIntermediates compute_intermediates(const SparseMatrix& S,
                                          const SparseMatrix& W,
                                          const DenseMatrix& U,
                                          const DenseMatrix& H,
                                          const SparseMatrix& R_norm,
                                          real lambda, Exec exec) {
  check_solver_shapes(S, W, R_norm, U, H);
  const index n = U.rows();
  const index k = U.cols();

  UpdateIntermediates out;
  if (W.empty()) {
    out.E1 = DenseMatrix(n, k);
    out.E2 = DenseMatrix(n, k);
    out.E3 = DenseMatrix(n, k);
    out.E4 = DenseMatrix(n, k);
  } else {
    const SparseMatrix S_sq = masked_apply(W, S);  // W^2 ⊙ S
    const DenseMatrix P = U.matmul(H);             // U H
    const DenseMatrix Q = U.matmul(H.transposed());  // U H^T
    const SparseMatrix M = masked_lowrank(W, U, H, U, exec);  // W^2 ⊙ UHU^T
    out.E1 = spmm(S_sq, Q, exec) * -1.0;
    out.E2 = spmm_transposed(S_sq, P, exec) * -1.0;
    out.E3 = spmm(M, Q, exec);
    out.E4 = spmm_transposed(M, P, exec);
  }

  const DenseMatrix esum = out.E1 + out.E2 + out.E3 + out.E4;
  const DenseMatrix RtU = spmm(R_norm, U, exec);
  out.Gamma = U.transposed_matmul(esum) * -1.0 +
              U.transposed_matmul(RtU) * lambda;
  return out;
}

DenseMatrix update_u(const SolverState& state,
                     const UpdateIntermediates& intermediates,
                     const SparseMatrix& R_norm, real lambda, real eps_div) {
  const DenseMatrix& U = state.U;
  const index n = U.rows();
  const index k = U.cols();

  const auto [e1p, e1m] = pos_neg_split(intermediates.E1);
  const auto [e2p, e2m] = pos_neg_split(intermediates.E2);
  const auto [e3p, e3m] = pos_neg_split(intermediates.E3);
  const auto [e4p, e4m] = pos_neg_split(intermediates.E4);
  const auto [gp, gm] = pos_neg_split(intermediates.Gamma);

  const DenseMatrix RtU = spmm(R_norm, U);
  const DenseMatrix UGp = U.matmul(gp);
  const DenseMatrix UGm = U.matmul(gm);

  DenseMatrix out(n, k);
  for (index i = 0; i < n; ++i) {
    for (index l = 0; l < k; ++l) {
      const real numer = e1m(i, l) + e2m(i, l) + e3m(i, l) + e4m(i, l) +
                         lambda * RtU(i, l) + UGm(i, l);
      const real denom = e1p(i, l) + e2p(i, l) + e3p(i, l) + e4p(i, l) +
                         UGp(i, l) + eps_div;
      out(i, l) = U(i, l) * std::sqrt(numer / denom);
    }
  }
  return out;
}

DenseMatrix grad_h(const SparseMatrix& S, const SparseMatrix& W,
                   const DenseMatrix& U, const DenseMatrix& H, Exec exec) {
  const index n = U.rows();
  const index k = U.cols();
  if (S.rows() != n || S.cols() != n || W.rows() != n || W.cols() != n ||
      H.rows() != k || H.cols() != k) {
    throw DimensionError("grad_h: dimension mismatch");
  }
  if (W.empty()) return DenseMatrix(k, k);
  const SparseMatrix S_sq = masked_apply(W, S);
  const SparseMatrix M = masked_lowrank(W, U, H, U, exec);
  const DenseMatrix data_term = U.transposed_matmul(spmm(S_sq, U, exec));
  const DenseMatrix model_term = U.transposed_matmul(spmm(M, U, exec));
  return model_term * 2.0 - data_term * 2.0;
}

std::pair<DenseMatrix, real> update_h(
    const DenseMatrix& H, const DenseMatrix& grad, real alpha,
    const std::function<real(const DenseMatrix&)>& objective_fn,
    bool backtracking, index max_backtracks) {
  if (!(alpha > 0.0)) throw ConfigError("update_h: alpha must be > 0");
  if (!backtracking) {
    return {H - grad * alpha, alpha};
  }
  const real f0 = objective_fn(H);
  real step = alpha;
  for (index attempt = 0; attempt <= max_backtracks; ++attempt) {
    DenseMatrix candidate = H - grad * step;
    const real f1 = objective_fn(candidate);
    if (std::isfinite(f1) && f1 <= f0) {
      return {std::move(candidate), step};
    }
    step /= 2.0;
  }
  return {H, 0.0};
}

SolverResult fit(const SparseMatrix& S, const SparseMatrix& R,
                 const SolverConfig& config) {
  config.validate();
  const index n = R.rows();
  if (R.cols() != n || S.rows() != n || S.cols() != n) {
    throw DimensionError("fit: S and R must be square with identical size");
  }
  if (n < config.k) {
    throw ConfigError("fit: n = " + std::to_string(n) + " is smaller than k = " +
                      std::to_string(config.k));
  }
  const std::vector<real> degrees = degree_vector(R);
  for (std::size_t i = 0; i < degrees.size(); ++i) {
    if (degrees[i] <= 0.0) {
      throw ConsistencyError(
          "fit: user " + std::to_string(i) +
          " has zero interaction degree; run ingestion preprocessing "
          "(zero-degree user removal) before fitting");
    }
  }

  const SparseMatrix R_norm = symmetric_normalize(R);
  const SparseMatrix W = weight_mask(S);

  SolverResult best;
  bool have_best = false;
  for (index r = 0; r < config.restarts; ++r) {
    RunOutcome run = run_single(S, W, R_norm, config, config.seed + static_cast<std::uint64_t>(r));
    if (!have_best || run.trace.back() < best.objective_trace.back()) {
      best.U = std::move(run.U);
      best.H = std::move(run.H);
      best.objective_trace = std::move(run.trace);
      best.converged = run.converged;
      best.iterations_used = run.iterations;
      have_best = true;
    }
  }
  return best;
}

std::pair<DenseMatrix, DenseMatrix> normalize_factors(const DenseMatrix& U,
                                                      const DenseMatrix& H) {
  const index n = U.rows();
  const index k = U.cols();
  if (H.rows() != k || H.cols() != k) {
    throw DimensionError("normalize_factors: H must be k x k");
  }
  std::vector<real> norms(static_cast<std::size_t>(k), 0.0);
  for (index l = 0; l < k; ++l) {
    real s = 0.0;
    for (index i = 0; i < n; ++i) s += U(i, l) * U(i, l);
    norms[static_cast<std::size_t>(l)] = std::sqrt(s);
  }
  DenseMatrix U_out(n, k);
  for (index i = 0; i < n; ++i) {
    for (index l = 0; l < k; ++l) {
      const real nl = norms[static_cast<std::size_t>(l)];
      U_out(i, l) = nl > 0.0 ? U(i, l) / nl : U(i, l);
    }
  }
  DenseMatrix H_out(k, k);
  for (index a = 0; a < k; ++a) {
    for (index b = 0; b < k; ++b) {
      const real na = norms[static_cast<std::size_t>(a)];
      const real nb = norms[static_cast<std::size_t>(b)];
      H_out(a, b) = H(a, b) * (na > 0.0 ? na : 1.0) * (nb > 0.0 ? nb : 1.0);
    }
  }
  return {std::move(U_out), std::move(H_out)};
}

}  // namespace daac
