// Copyright 2026 The DAAC Authors
// SPDX-License-Identifier: Apache-2.0
//
// Reference implementations used only by tests. Everything here is written
// as plain dense loops or direct enumeration, independent of the library's
// sparse kernels, so the two sides can be compared against each other.

#ifndef DAAC_TESTS_ORACLES_HPP
#define DAAC_TESTS_ORACLES_HPP

#include <algorithm>
#include <cmath>
#include <map>
#include <utility>
#include <vector>

#include "daac/common.hpp"
#include "daac/dense_matrix.hpp"
#include "daac/sparse_matrix.hpp"

namespace oracle {

using daac::DenseMatrix;
using daac::index;
using daac::real;
using daac::SparseMatrix;

inline DenseMatrix matmul_ref(const DenseMatrix& a, const DenseMatrix& b) {
  DenseMatrix out(a.rows(), b.cols());
  for (index i = 0; i < a.rows(); ++i) {
    for (index j = 0; j < b.cols(); ++j) {
      real sum = 0.0;
      for (index l = 0; l < a.cols(); ++l) sum += a(i, l) * b(l, j);
      out(i, j) = sum;
    }
  }
  return out;
}

inline DenseMatrix transpose_ref(const DenseMatrix& a) {
  DenseMatrix out(a.cols(), a.rows());
  for (index i = 0; i < a.rows(); ++i) {
    for (index j = 0; j < a.cols(); ++j) out(j, i) = a(i, j);
  }
  return out;
}

// U H V^T as three dense loops.
inline DenseMatrix low_rank_ref(const DenseMatrix& U, const DenseMatrix& H,
                                const DenseMatrix& V) {
  return matmul_ref(matmul_ref(U, H), transpose_ref(V));
}

// W^2 ⊙ (U H V^T) on W's nonzero pattern.
inline DenseMatrix masked_lowrank_ref(const DenseMatrix& W,
                                      const DenseMatrix& U,
                                      const DenseMatrix& H,
                                      const DenseMatrix& V) {
  const DenseMatrix model = low_rank_ref(U, H, V);
  DenseMatrix out(W.rows(), W.cols());
  for (index i = 0; i < W.rows(); ++i) {
    for (index j = 0; j < W.cols(); ++j) {
      if (W(i, j) != 0.0) out(i, j) = W(i, j) * W(i, j) * model(i, j);
    }
  }
  return out;
}

// || W ⊙ (S - U H U^T) ||_F^2 summed over W's nonzero pattern.
inline real masked_residual_ref(const DenseMatrix& W, const DenseMatrix& S,
                                const DenseMatrix& U, const DenseMatrix& H) {
  const DenseMatrix model = low_rank_ref(U, H, U);
  real sum = 0.0;
  for (index i = 0; i < W.rows(); ++i) {
    for (index j = 0; j < W.cols(); ++j) {
      if (W(i, j) == 0.0) continue;
      const real r = W(i, j) * (S(i, j) - model(i, j));
      sum += r * r;
    }
  }
  return sum;
}

inline real trace_term_ref(const DenseMatrix& R_norm, const DenseMatrix& U) {
  real sum = 0.0;
  for (index i = 0; i < R_norm.rows(); ++i) {
    for (index j = 0; j < R_norm.cols(); ++j) {
      if (R_norm(i, j) == 0.0) continue;
      real dot = 0.0;
      for (index l = 0; l < U.cols(); ++l) dot += U(i, l) * U(j, l);
      sum += R_norm(i, j) * dot;
    }
  }
  return sum;
}

inline real objective_ref(const DenseMatrix& S, const DenseMatrix& W,
                          const DenseMatrix& R_norm, const DenseMatrix& U,
                          const DenseMatrix& H, real lambda) {
  return masked_residual_ref(W, S, U, H) - lambda * trace_term_ref(R_norm, U);
}

struct IntermediatesRef {
  DenseMatrix E1, E2, E3, E4, Gamma;
};

inline IntermediatesRef intermediates_ref(const DenseMatrix& S,
                                          const DenseMatrix& W,
                                          const DenseMatrix& R_norm,
                                          const DenseMatrix& U,
                                          const DenseMatrix& H, real lambda) {
  const index n = S.rows();
  DenseMatrix S_sq(n, n);
  for (index i = 0; i < n; ++i) {
    for (index j = 0; j < n; ++j) {
      if (W(i, j) != 0.0) S_sq(i, j) = W(i, j) * W(i, j) * S(i, j);
    }
  }
  const DenseMatrix M = masked_lowrank_ref(W, U, H, U);
  const DenseMatrix P = matmul_ref(U, H);
  const DenseMatrix Q = matmul_ref(U, transpose_ref(H));

  IntermediatesRef out;
  out.E1 = matmul_ref(S_sq, Q) * -1.0;
  out.E2 = matmul_ref(transpose_ref(S_sq), P) * -1.0;
  out.E3 = matmul_ref(M, Q);
  out.E4 = matmul_ref(transpose_ref(M), P);
  const DenseMatrix esum = out.E1 + out.E2 + out.E3 + out.E4;
  out.Gamma = matmul_ref(transpose_ref(U), esum) * -1.0 +
              matmul_ref(transpose_ref(U), matmul_ref(R_norm, U)) * lambda;
  return out;
}

// Central finite differences of the dense objective in H.
inline DenseMatrix fd_grad_h_ref(const DenseMatrix& S, const DenseMatrix& W,
                                 const DenseMatrix& U, const DenseMatrix& H,
                                 real step) {
  const index k = H.rows();
  DenseMatrix zero_r(S.rows(), S.cols());
  DenseMatrix grad(k, k);
  for (index a = 0; a < k; ++a) {
    for (index b = 0; b < k; ++b) {
      DenseMatrix hp = H;
      DenseMatrix hm = H;
      hp(a, b) += step;
      hm(a, b) -= step;
      const real fp = objective_ref(S, W, zero_r, U, hp, 0.0);
      const real fm = objective_ref(S, W, zero_r, U, hm, 0.0);
      grad(a, b) = (fp - fm) / (2.0 * step);
    }
  }
  return grad;
}

inline real max_rel_diff(const DenseMatrix& got, const DenseMatrix& want) {
  return got.max_abs_diff(want) / std::max(1.0, want.max_abs());
}

inline real rel_diff(real got, real want) {
  return std::fabs(got - want) / std::max(1.0, std::fabs(want));
}

// ---- clustering metric references ----------------------------------------

template <typename A, typename B>
std::vector<std::vector<index>> joint_counts(const std::vector<A>& a,
                                             const std::vector<B>& b) {
  std::map<A, index> ida;
  std::map<B, index> idb;
  for (const A& x : a) ida.emplace(x, 0);
  for (const B& x : b) idb.emplace(x, 0);
  index next = 0;
  for (auto& [k, v] : ida) v = next++;
  next = 0;
  for (auto& [k, v] : idb) v = next++;
  std::vector<std::vector<index>> counts(
      ida.size(), std::vector<index>(idb.size(), 0));
  for (std::size_t i = 0; i < a.size(); ++i) {
    ++counts[static_cast<std::size_t>(ida[a[i]])]
            [static_cast<std::size_t>(idb[b[i]])];
  }
  return counts;
}

template <typename A, typename B>
real nmi_ref(const std::vector<A>& a, const std::vector<B>& b) {
  const auto counts = joint_counts(a, b);
  const real n = static_cast<real>(a.size());
  // Marginals stay integral until the final division so that a
  // single-cluster partition has probability exactly 1 and entropy
  // exactly 0.
  std::vector<long long> ca(counts.size(), 0);
  std::vector<long long> cb(counts[0].size(), 0);
  for (std::size_t i = 0; i < counts.size(); ++i) {
    for (std::size_t j = 0; j < counts[0].size(); ++j) {
      ca[i] += counts[i][j];
      cb[j] += counts[i][j];
    }
  }
  std::vector<real> pa(ca.size()), pb(cb.size());
  for (std::size_t i = 0; i < ca.size(); ++i)
    pa[i] = static_cast<real>(ca[i]) / n;
  for (std::size_t j = 0; j < cb.size(); ++j)
    pb[j] = static_cast<real>(cb[j]) / n;
  real ha = 0.0, hb = 0.0, mi = 0.0;
  for (real p : pa) {
    if (p > 0.0) ha -= p * std::log(p);
  }
  for (real p : pb) {
    if (p > 0.0) hb -= p * std::log(p);
  }
  for (std::size_t i = 0; i < counts.size(); ++i) {
    for (std::size_t j = 0; j < counts[0].size(); ++j) {
      if (counts[i][j] == 0) continue;
      const real pij = static_cast<real>(counts[i][j]) / n;
      mi += pij * std::log(pij / (pa[i] * pb[j]));
    }
  }
  const real denom = std::sqrt(ha * hb);
  if (denom == 0.0) {
    return (ha == 0.0 && hb == 0.0) ? 1.0 : 0.0;
  }
  return std::min(1.0, std::max(0.0, mi / denom));
}

// ARI by direct enumeration of the four pair-agreement counts; an
// all-agreeing denominator of zero is scored 1.
template <typename A, typename B>
real ari_ref(const std::vector<A>& a, const std::vector<B>& b) {
  real n11 = 0.0, n10 = 0.0, n01 = 0.0, n00 = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = i + 1; j < a.size(); ++j) {
      const bool same_a = a[i] == a[j];
      const bool same_b = b[i] == b[j];
      if (same_a && same_b) {
        ++n11;
      } else if (same_a) {
        ++n10;
      } else if (same_b) {
        ++n01;
      } else {
        ++n00;
      }
    }
  }
  const real denom = (n11 + n10) * (n10 + n00) + (n11 + n01) * (n01 + n00);
  if (denom == 0.0) return 1.0;
  return 2.0 * (n11 * n00 - n10 * n01) / denom;
}

template <typename A, typename B>
real purity_ref(const std::vector<A>& a, const std::vector<B>& b) {
  const auto counts = joint_counts(a, b);
  real sum = 0.0;
  for (const auto& row : counts) {
    index best = 0;
    for (index c : row) best = std::max(best, c);
    sum += static_cast<real>(best);
  }
  return sum / static_cast<real>(a.size());
}

// Visits every partition of {0..n-1} as a restricted growth string.
template <typename F>
void for_each_partition(int n, F&& visit) {
  std::vector<int> a(static_cast<std::size_t>(n), 0);
  while (true) {
    visit(a);
    int i = n - 1;
    for (; i > 0; --i) {
      int prefix_max = 0;
      for (int j = 0; j < i; ++j) prefix_max = std::max(prefix_max, a[j]);
      if (a[static_cast<std::size_t>(i)] <= prefix_max) break;
    }
    if (i == 0) return;
    ++a[static_cast<std::size_t>(i)];
    for (int j = i + 1; j < n; ++j) a[static_cast<std::size_t>(j)] = 0;
  }
}

// ---- t distribution reference ---------------------------------------------

// P(T > t) for Student's t with df degrees of freedom, by Simpson quadrature
// after substituting x = t + tan(theta). Accurate to well below 1e-10 for
// df >= 1.
inline real t_upper_tail_ref(real t, real df) {
  const real log_norm = std::lgamma(0.5 * (df + 1.0)) -
                        std::lgamma(0.5 * df) -
                        0.5 * std::log(df * 3.14159265358979323846);
  const auto integrand = [&](real theta) {
    const real x = t + std::tan(theta);
    const real sec = 1.0 / std::cos(theta);
    const real log_pdf =
        log_norm - 0.5 * (df + 1.0) * std::log1p(x * x / df);
    return std::exp(log_pdf) * sec * sec;
  };
  const int steps = 20000;  // even
  const real hi = 1.5707963267948966;  // pi/2, integrand -> 0 there
  const real h = hi / steps;
  real sum = integrand(0.0);
  for (int i = 1; i < steps; ++i) {
    const real theta = h * i;
    sum += integrand(theta) * (i % 2 == 1 ? 4.0 : 2.0);
  }
  // The endpoint integrand vanishes for df > 1 and is finite for df = 1;
  // evaluate just inside to dodge the tan singularity.
  sum += integrand(hi - 1e-12);
  return sum * h / 3.0;
}

// ---- random problem instances ---------------------------------------------

struct TestInstance {
  SparseMatrix S, W, R;
  DenseMatrix U, H;
  real lambda = 0.0;
};

// Random signed attitude matrix, aligned weight mask, symmetric interaction
// matrix, and a strictly positive starting factor pair.
inline TestInstance random_instance(index n, index k, daac::Rng& rng,
                                    bool unit_weights = true) {
  std::vector<daac::Triplet> s_trips, w_trips, r_trips;
  for (index i = 0; i < n; ++i) {
    for (index j = 0; j < n; ++j) {
      if (i == j || rng.uniform() >= 0.3) continue;
      real v = rng.uniform(-1.0, 1.0);
      if (std::fabs(v) < 1e-6) v = 0.25;  // keep S's pattern aligned with W
      s_trips.push_back({i, j, v});
      w_trips.push_back({i, j, unit_weights ? 1.0 : rng.uniform(0.5, 2.0)});
    }
  }
  for (index i = 0; i < n; ++i) {
    for (index j = i + 1; j < n; ++j) {
      if (rng.uniform() >= 0.3) continue;
      const real w = rng.uniform(0.5, 2.0);
      r_trips.push_back({i, j, w});
      r_trips.push_back({j, i, w});
    }
  }
  TestInstance inst;
  inst.S = SparseMatrix::from_triplets(n, n, std::move(s_trips));
  inst.W = SparseMatrix::from_triplets(n, n, std::move(w_trips));
  inst.R = SparseMatrix::from_triplets(n, n, std::move(r_trips));
  inst.U = DenseMatrix(n, k);
  for (index i = 0; i < n; ++i) {
    for (index c = 0; c < k; ++c) inst.U(i, c) = rng.uniform(0.1, 1.1);
  }
  inst.H = DenseMatrix(k, k);
  for (index a = 0; a < k; ++a) {
    for (index b = 0; b < k; ++b) inst.H(a, b) = rng.uniform(-0.5, 0.5);
  }
  inst.lambda = rng.uniform(0.0, 10.0);
  return inst;
}

}  // namespace oracle

#endif  // DAAC_TESTS_ORACLES_HPP
