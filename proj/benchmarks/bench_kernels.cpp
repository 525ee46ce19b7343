// Copyright 2026 The DAAC Authors
// SPDX-License-Identifier: Apache-2.0
//
// Microbenchmarks for the sparse kernels and one small end-to-end fit.
// The instances come from the planted generator so the sparsity patterns
// resemble real inputs rather than uniform noise.

#include <benchmark/benchmark.h>

#include "daac/kernels.hpp"
#include "daac/solver.hpp"
#include "daac/synth.hpp"

namespace {

using daac::DenseMatrix;
using daac::Exec;
using daac::index;
using daac::PlantedInstance;
using daac::PlantedSpec;
using daac::Rng;
using daac::SparseMatrix;

PlantedSpec bench_spec(index n, index k) {
  PlantedSpec spec;
  spec.n = n;
  spec.k = k;
  spec.p_in = 0.1;
  spec.p_out = 0.01;
  spec.p_att_in = 0.08;
  spec.p_att_out = 0.04;
  spec.noise = 0.05;
  spec.relations = daac::all_antagonism(k);
  spec.seed = 12345;
  return spec;
}

DenseMatrix random_factor(index rows, index cols, std::uint64_t seed) {
  DenseMatrix m(rows, cols);
  Rng rng(seed);
  for (index r = 0; r < rows; ++r) {
    for (index c = 0; c < cols; ++c) m(r, c) = rng.uniform(0.1, 1.1);
  }
  return m;
}

void bm_masked_lowrank(benchmark::State& state) {
  const index n = state.range(0);
  const Exec exec = state.range(1) ? Exec::Par : Exec::Seq;
  const PlantedInstance inst = daac::generate(bench_spec(n, 8));
  const SparseMatrix W = daac::weight_mask(inst.S);
  const DenseMatrix U = random_factor(n, 8, 1);
  const DenseMatrix H = random_factor(8, 8, 2);
  for (auto _ : state) {
    benchmark::DoNotOptimize(daac::masked_lowrank(W, U, H, U, exec));
  }
}

void bm_spmm(benchmark::State& state) {
  const index n = state.range(0);
  const PlantedInstance inst = daac::generate(bench_spec(n, 8));
  const DenseMatrix U = random_factor(n, 8, 3);
  for (auto _ : state) {
    benchmark::DoNotOptimize(daac::spmm(inst.R, U, Exec::Seq));
  }
}

void bm_masked_residual(benchmark::State& state) {
  const index n = state.range(0);
  const Exec exec = state.range(1) ? Exec::Par : Exec::Seq;
  const PlantedInstance inst = daac::generate(bench_spec(n, 8));
  const SparseMatrix W = daac::weight_mask(inst.S);
  const DenseMatrix U = random_factor(n, 8, 4);
  const DenseMatrix H = random_factor(8, 8, 5);
  for (auto _ : state) {
    benchmark::DoNotOptimize(daac::frobenius_sq_masked(W, inst.S, U, H, exec));
  }
}

void bm_update_intermediates(benchmark::State& state) {
  const index n = state.range(0);
  const PlantedInstance inst = daac::generate(bench_spec(n, 8));
  const SparseMatrix W = daac::weight_mask(inst.S);
  const SparseMatrix R_norm = daac::symmetric_normalize(inst.R);
  const DenseMatrix U = random_factor(n, 8, 6);
  const DenseMatrix H = random_factor(8, 8, 7);
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        daac::compute_intermediates(inst.S, W, U, H, R_norm, 1e3));
  }
}

void bm_symmetric_normalize(benchmark::State& state) {
  const index n = state.range(0);
  const PlantedInstance inst = daac::generate(bench_spec(n, 8));
  for (auto _ : state) {
    benchmark::DoNotOptimize(daac::symmetric_normalize(inst.R));
  }
}

void bm_fit_small(benchmark::State& state) {
  const PlantedInstance inst = daac::generate(bench_spec(120, 3));
  daac::SolverConfig config;
  config.k = 3;
  config.lambda = 1e3;
  config.alpha = 1.0;
  config.max_iters = 50;
  config.tol = 1e-300;  // effectively never converges: fixed work per run
  for (auto _ : state) {
    benchmark::DoNotOptimize(daac::fit(inst.S, inst.R, config));
  }
}

BENCHMARK(bm_masked_lowrank)
    ->Args({500, 0})
    ->Args({500, 1})
    ->Args({2000, 0})
    ->Args({2000, 1});
BENCHMARK(bm_spmm)->Arg(500)->Arg(2000);
BENCHMARK(bm_masked_residual)
    ->Args({500, 0})
    ->Args({500, 1})
    ->Args({2000, 0})
    ->Args({2000, 1});
BENCHMARK(bm_update_intermediates)->Arg(500)->Arg(2000);
BENCHMARK(bm_symmetric_normalize)->Arg(2000);
BENCHMARK(bm_fit_small);

}  // namespace

BENCHMARK_MAIN();
