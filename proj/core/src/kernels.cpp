// Copyright 2026 The DAAC Authors
// SPDX-License-Identifier: Apache-2.0

#include "daac/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <future>

namespace daac {

namespace {

// Fixed chunk count so parallel results do not depend on the machine.
constexpr index kParChunks = 8;

// Runs fn(row_begin, row_end) over a row partition. Each chunk writes a
// disjoint row range, so results are identical to the sequential path.
template <typename Fn>
void for_each_row_chunk(index n_rows, Fn&& fn) {
  const index chunks = std::min<index>(kParChunks, std::max<index>(n_rows, 1));
  const index step = (n_rows + chunks - 1) / chunks;
  std::vector<std::future<void>> futures;
  for (index begin = 0; begin < n_rows; begin += step) {
    const index end = std::min(begin + step, n_rows);
    futures.push_back(std::async(std::launch::async, [&fn, begin, end] {
      fn(begin, end);
    }));
  }
  for (auto& f : futures) f.get();
}

void check_square(const SparseMatrix& a, const char* op) {
  if (a.rows() != a.cols()) {
    throw DimensionError(std::string(op) + ": matrix must be square, got " +
                         std::to_string(a.rows()) + "x" +
                         std::to_string(a.cols()));
  }
}

}  // namespace

std::vector<real> degree_vector(const SparseMatrix& R) {
  check_square(R, "degree_vector");
  std::vector<real> d(static_cast<std::size_t>(R.rows()), 0.0);
  const auto& offsets = R.row_offsets();
  const auto& values = R.values();
  for (index r = 0; r < R.rows(); ++r) {
    real s = 0.0;
    for (index p = offsets[static_cast<std::size_t>(r)];
         p < offsets[static_cast<std::size_t>(r) + 1]; ++p) {
      s += values[static_cast<std::size_t>(p)];
    }
    d[static_cast<std::size_t>(r)] = s;
  }
  return d;
}

SparseMatrix symmetric_normalize(const SparseMatrix& R) {
  check_square(R, "symmetric_normalize");
  for (real v : R.values()) {
    if (v < 0.0) {
      throw DomainError("symmetric_normalize: negative entry");
    }
  }
  const std::vector<real> d = degree_vector(R);
  std::vector<real> inv_sqrt(d.size(), 0.0);
  for (std::size_t i = 0; i < d.size(); ++i) {
    if (d[i] > 0.0) inv_sqrt[i] = 1.0 / std::sqrt(d[i]);
  }
  std::vector<Triplet> trips;
  trips.reserve(static_cast<std::size_t>(R.nnz()));
  const auto& offsets = R.row_offsets();
  const auto& cols = R.col_indices();
  const auto& values = R.values();
  for (index r = 0; r < R.rows(); ++r) {
    const real si = inv_sqrt[static_cast<std::size_t>(r)];
    if (si == 0.0) continue;
    for (index p = offsets[static_cast<std::size_t>(r)];
         p < offsets[static_cast<std::size_t>(r) + 1]; ++p) {
      const index c = cols[static_cast<std::size_t>(p)];
      const real sj = inv_sqrt[static_cast<std::size_t>(c)];
      if (sj == 0.0) continue;
      trips.push_back({r, c, values[static_cast<std::size_t>(p)] * si * sj});
    }
  }
  return SparseMatrix::from_triplets(R.rows(), R.cols(), std::move(trips));
}

std::pair<SparseMatrix, SparseMatrix> pos_neg_split(const SparseMatrix& A) {
  std::vector<Triplet> plus, minus;
  const auto trips = A.to_triplets();
  for (const auto& t : trips) {
    const real a = std::abs(t.value);
    const real p = (a + t.value) / 2.0;
    const real m = (a - t.value) / 2.0;
    if (p != 0.0) plus.push_back({t.row, t.col, p});
    if (m != 0.0) minus.push_back({t.row, t.col, m});
  }
  return {SparseMatrix::from_triplets(A.rows(), A.cols(), std::move(plus)),
          SparseMatrix::from_triplets(A.rows(), A.cols(), std::move(minus))};
}

std::pair<DenseMatrix, DenseMatrix> pos_neg_split(const DenseMatrix& A) {
  DenseMatrix plus(A.rows(), A.cols());
  DenseMatrix minus(A.rows(), A.cols());
  for (index i = 0; i < A.rows(); ++i) {
    for (index j = 0; j < A.cols(); ++j) {
      const real v = A(i, j);
      const real a = std::abs(v);
      plus(i, j) = (a + v) / 2.0;
      minus(i, j) = (a - v) / 2.0;
    }
  }
  return {std::move(plus), std::move(minus)};
}

SparseMatrix weight_mask(const SparseMatrix& S) {
  std::vector<Triplet> trips;
  trips.reserve(static_cast<std::size_t>(S.nnz()));
  for (const auto& t : S.to_triplets()) trips.push_back({t.row, t.col, 1.0});
  return SparseMatrix::from_triplets(S.rows(), S.cols(), std::move(trips));
}

SparseMatrix masked_apply(const SparseMatrix& W, const SparseMatrix& S) {
  if (!W.same_pattern(S)) {
    throw ConsistencyError("masked_apply: W and S sparsity patterns differ");
  }
  SparseMatrix out = S;
  auto& values = out.values();
  const auto& w = W.values();
  for (std::size_t i = 0; i < values.size(); ++i) {
    values[i] *= w[i] * w[i];
  }
  return out;
}

SparseMatrix masked_lowrank(const SparseMatrix& W, const DenseMatrix& U,
                            const DenseMatrix& H, const DenseMatrix& V,
                            Exec exec) {
  const index n = W.rows();
  const index k = U.cols();
  if (W.cols() != V.rows() || U.rows() != n || H.rows() != k ||
      H.cols() != V.cols()) {
    throw DimensionError("masked_lowrank: dimension mismatch");
  }
  const DenseMatrix UH = U.matmul(H);  // n x k'
  const index kk = UH.cols();

  const auto& offsets = W.row_offsets();
  const auto& cols = W.col_indices();
  const auto& wvals = W.values();
  std::vector<real> out_values(static_cast<std::size_t>(W.nnz()), 0.0);

  auto run_rows = [&](index begin, index end) {
    for (index r = begin; r < end; ++r) {
      const real* uh = UH.data() + r * kk;
      for (index p = offsets[static_cast<std::size_t>(r)];
           p < offsets[static_cast<std::size_t>(r) + 1]; ++p) {
        const index c = cols[static_cast<std::size_t>(p)];
        const real* vrow = V.data() + c * kk;
        real dot = 0.0;
        for (index l = 0; l < kk; ++l) dot += uh[l] * vrow[l];
        const real w = wvals[static_cast<std::size_t>(p)];
        out_values[static_cast<std::size_t>(p)] = w * w * dot;
      }
    }
  };
  if (exec == Exec::Par) {
    for_each_row_chunk(n, run_rows);
  } else {
    run_rows(0, n);
  }

  std::vector<Triplet> trips;
  trips.reserve(out_values.size());
  for (index r = 0; r < n; ++r) {
    for (index p = offsets[static_cast<std::size_t>(r)];
         p < offsets[static_cast<std::size_t>(r) + 1]; ++p) {
      const real v = out_values[static_cast<std::size_t>(p)];
      if (v != 0.0) {
        trips.push_back({r, cols[static_cast<std::size_t>(p)], v});
      }
    }
  }
  return SparseMatrix::from_triplets(W.rows(), W.cols(), std::move(trips));
}

real frobenius_sq_masked(const SparseMatrix& W, const SparseMatrix& S,
                         const DenseMatrix& U, const DenseMatrix& H,
                         Exec exec) {
  const index n = W.rows();
  if (W.cols() != n || S.rows() != n || S.cols() != n || U.rows() != n ||
      H.rows() != U.cols() || H.cols() != U.cols()) {
    throw DimensionError("frobenius_sq_masked: dimension mismatch");
  }
  const DenseMatrix UH = U.matmul(H);
  const index k = UH.cols();

  const auto& w_off = W.row_offsets();
  const auto& w_col = W.col_indices();
  const auto& w_val = W.values();
  const auto& s_off = S.row_offsets();
  const auto& s_col = S.col_indices();
  const auto& s_val = S.values();

  auto row_range_sum = [&](index begin, index end) {
    real acc = 0.0;
    for (index r = begin; r < end; ++r) {
      const real* uh = UH.data() + r * k;
      index sp = s_off[static_cast<std::size_t>(r)];
      const index s_end = s_off[static_cast<std::size_t>(r) + 1];
      for (index p = w_off[static_cast<std::size_t>(r)];
           p < w_off[static_cast<std::size_t>(r) + 1]; ++p) {
        const index c = w_col[static_cast<std::size_t>(p)];
        // Both column lists are sorted; advance the S cursor to c.
        while (sp < s_end && s_col[static_cast<std::size_t>(sp)] < c) ++sp;
        real s = 0.0;
        if (sp < s_end && s_col[static_cast<std::size_t>(sp)] == c) {
          s = s_val[static_cast<std::size_t>(sp)];
        }
        const real* urow = U.data() + c * k;
        real model = 0.0;
        for (index l = 0; l < k; ++l) model += uh[l] * urow[l];
        const real w = w_val[static_cast<std::size_t>(p)];
        const real resid = s - model;
        acc += w * w * resid * resid;
      }
    }
    return acc;
  };

  if (exec == Exec::Par) {
    // Fixed chunking; partials are summed in chunk order so the result is
    // machine-independent (though it may differ from Seq in the last bits).
    const index chunks = std::min<index>(kParChunks, std::max<index>(n, 1));
    const index step = (n + chunks - 1) / chunks;
    std::vector<std::future<real>> futures;
    for (index begin = 0; begin < n; begin += step) {
      const index end = std::min(begin + step, n);
      futures.push_back(std::async(std::launch::async, [&, begin, end] {
        return row_range_sum(begin, end);
      }));
    }
    real total = 0.0;
    for (auto& f : futures) total += f.get();
    return total;
  }
  return row_range_sum(0, n);
}

DenseMatrix spmm(const SparseMatrix& A, const DenseMatrix& X, Exec exec) {
  if (A.cols() != X.rows()) {
    throw DimensionError("spmm: inner dimensions " + std::to_string(A.cols()) +
                         " vs " + std::to_string(X.rows()));
  }
  const index k = X.cols();
  DenseMatrix out(A.rows(), k);
  const auto& offsets = A.row_offsets();
  const auto& cols = A.col_indices();
  const auto& values = A.values();

  auto run_rows = [&](index begin, index end) {
    for (index r = begin; r < end; ++r) {
      real* orow = out.data() + r * k;
      for (index p = offsets[static_cast<std::size_t>(r)];
           p < offsets[static_cast<std::size_t>(r) + 1]; ++p) {
        const real v = values[static_cast<std::size_t>(p)];
        const real* xrow =
            X.data() + cols[static_cast<std::size_t>(p)] * k;
        for (index l = 0; l < k; ++l) orow[l] += v * xrow[l];
      }
    }
  };
  if (exec == Exec::Par) {
    for_each_row_chunk(A.rows(), run_rows);
  } else {
    run_rows(0, A.rows());
  }
  return out;
}

DenseMatrix spmm_transposed(const SparseMatrix& A, const DenseMatrix& X,
                            Exec exec) {
  if (A.rows() != X.rows()) {
    throw DimensionError("spmm_transposed: inner dimensions " +
                         std::to_string(A.rows()) + " vs " +
                         std::to_string(X.rows()));
  }
  if (exec == Exec::Par) {
    return spmm(A.transposed(), X, Exec::Par);
  }
  const index k = X.cols();
  DenseMatrix out(A.cols(), k);
  const auto& offsets = A.row_offsets();
  const auto& cols = A.col_indices();
  const auto& values = A.values();
  for (index r = 0; r < A.rows(); ++r) {
    const real* xrow = X.data() + r * k;
    for (index p = offsets[static_cast<std::size_t>(r)];
         p < offsets[static_cast<std::size_t>(r) + 1]; ++p) {
      const real v = values[static_cast<std::size_t>(p)];
      real* orow = out.data() + cols[static_cast<std::size_t>(p)] * k;
      for (index l = 0; l < k; ++l) orow[l] += v * xrow[l];
    }
  }
  return out;
}

}  // namespace daac
