// Copyright 2026 The DAAC Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef DAAC_SOLVER_HPP
#define DAAC_SOLVER_HPP

#include <functional>
#include <utility>
#include <vector>

#include "daac/common.hpp"
#include "daac/dense_matrix.hpp"
#include "daac/kernels.hpp"
#include "daac/sparse_matrix.hpp"

namespace daac {

/// Hyperparameters for the joint factorization
///   minimize  ||W ⊙ (S - U H U^T)||_F^2 - lambda * tr(U^T R~ U)
/// over U >= 0 (n x k) and H (k x k), with soft orthogonality on U.
struct SolverConfig {
  index k = 2;
  real lambda = 1e6;
  real alpha = 1e-3;       // initial H learning rate
  index max_iters = 500;
  real tol = 1e-6;
  real eps_div = 1e-12;    // denominator guard in the multiplicative update
  std::uint64_t seed = 42;
  bool backtracking = true;
  index max_backtracks = 30;
  index restarts = 1;      // independent runs with seeds seed, seed+1, ...
  Exec exec = Exec::Seq;

  void validate() const;
};

/// Current iterate.
struct SolverState {
  DenseMatrix U;  // n x k, nonnegative
  DenseMatrix H;  // k x k, signed
  index iteration = 0;
  real objective = 0.0;
};

/// Gradient building blocks for the multiplicative U-update.
struct UpdateIntermediates {
  DenseMatrix E1, E2, E3, E4;  // n x k
  DenseMatrix Gamma;           // k x k
};

struct SolverResult {
  DenseMatrix U;
  DenseMatrix H;
  std::vector<real> objective_trace;  // length iterations_used + 1
  bool converged = false;
  index iterations_used = 0;
};

/// Objective value. The trace term is computed sparsely over R_norm's
/// nonzeros; the residual term over W's nonzeros.
real objective(const SparseMatrix& S, const SparseMatrix& W,
               const SparseMatrix& R_norm, const DenseMatrix& U,
               const DenseMatrix& H, real lambda, Exec exec = Exec::Seq);

/// E1 = -(W^2 ⊙ S) U H^T          E2 = -(W^2 ⊙ S)^T U H
/// E3 = (W^2 ⊙ U H U^T) U H^T     E4 = (W^2 ⊙ U H U^T)^T U H
/// Gamma = -U^T (E1+E2+E3+E4) + lambda U^T R~ U
UpdateIntermediates compute_intermediates(const SparseMatrix& S,
                                          const SparseMatrix& W,
                                          const DenseMatrix& U,
                                          const DenseMatrix& H,
                                          const SparseMatrix& R_norm,
                                          real lambda, Exec exec = Exec::Seq);

/// Multiplicative update. Splitting the gradient
///   dF/dU = 2 (E1+E2+E3+E4 - lambda R~ U + U Gamma)
/// into nonnegative parts gives
///   U <- U ⊙ sqrt( (E1- + E2- + E3- + E4- + lambda R~ U + U Gamma-)
///                / (E1+ + E2+ + E3+ + E4+ + U Gamma+ + eps_div) ).
/// Zero entries of U stay zero; the output is nonnegative.
DenseMatrix update_u(const SolverState& state,
                     const UpdateIntermediates& intermediates,
                     const SparseMatrix& R_norm, real lambda, real eps_div);

/// dF/dH = -2 U^T (W^2 ⊙ S) U + 2 U^T (W^2 ⊙ U H U^T) U.
DenseMatrix grad_h(const SparseMatrix& S, const SparseMatrix& W,
                   const DenseMatrix& U, const DenseMatrix& H,
                   Exec exec = Exec::Seq);

/// Gradient step H <- H - alpha * grad. With backtracking, alpha is halved
/// until the objective does not increase (up to max_backtracks); if every
/// step fails, returns H unchanged with step 0. Returns (new H, step used).
std::pair<DenseMatrix, real> update_h(
    const DenseMatrix& H, const DenseMatrix& grad, real alpha,
    const std::function<real(const DenseMatrix&)>& objective_fn,
    bool backtracking, index max_backtracks);

/// Alternating optimization. Runs config.restarts independent starts and
/// keeps the lowest final objective. Convergence requires the relative
/// objective change to drop below tol and both iterates to have settled
/// (max-norm step below 10*tol relative to the iterate's magnitude);
/// the objective alone can flatten while U and H still drift.
SolverResult fit(const SparseMatrix& S, const SparseMatrix& R,
                 const SolverConfig& config);

/// Post-processing for reporting: scales U's columns to unit Euclidean
/// norm and rescales H as H <- diag(norms) H diag(norms), preserving
/// U H U^T. Zero-norm columns are left untouched.
std::pair<DenseMatrix, DenseMatrix> normalize_factors(const DenseMatrix& U,
                                                      const DenseMatrix& H);

}  // namespace daac

#endif  // DAAC_SOLVER_HPP
