// Copyright 2026 The DAAC Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef DAAC_COMMON_HPP
#define DAAC_COMMON_HPP

#include <charconv>
#include <cmath>
#include <cstdint>
#include <map>
#include <random>
#include <stdexcept>
#include <string>
#include <utility>

namespace daac {

using index = std::int64_t;
using real = double;

/// Base class for all library errors. Subclasses distinguish failure
/// categories so callers can map them to exit codes or recovery paths.
class Error : public std::runtime_error {
public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// Shape mismatch between operands.
class DimensionError : public Error {
public:
  using Error::Error;
};

/// Value outside the mathematically valid domain (negative weight where
/// nonnegativity is required, nonpositive edge weight, and so on).
class DomainError : public Error {
public:
  using Error::Error;
};

/// Inputs that are individually valid but mutually inconsistent
/// (mismatched sparsity patterns, conflicting duplicate records).
class ConsistencyError : public Error {
public:
  using Error::Error;
};

/// Invalid solver or pipeline configuration.
class ConfigError : public Error {
public:
  using Error::Error;
};

/// Malformed input text.
class ParseError : public Error {
public:
  using Error::Error;
};

/// Numerical breakdown at runtime (non-finite objective, degenerate
/// variance).
class NumericalError : public Error {
public:
  using Error::Error;
};

/// Relation between two communities as read off the relation matrix.
enum class Relation { Antagonism, Alliance, None };

inline const char* to_string(Relation r) {
  switch (r) {
    case Relation::Antagonism: return "antagonism";
    case Relation::Alliance: return "alliance";
    case Relation::None: return "none";
  }
  return "none";
}

/// Shortest decimal representation that parses back to the same double.
inline std::string format_real(real v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

/// Ground-truth relations between named communities, keyed by the
/// lexicographically ordered name pair.
using TruthRelations = std::map<std::pair<std::string, std::string>, Relation>;

inline std::pair<std::string, std::string> normalized_pair(
    const std::string& a, const std::string& b) {
  return a <= b ? std::make_pair(a, b) : std::make_pair(b, a);
}

/// Inserts a relation symmetrically. Re-inserting an existing pair with the
/// same relation is a no-op; a conflicting relation raises ConsistencyError.
inline void insert_truth_relation(TruthRelations& truth, const std::string& a,
                                  const std::string& b, Relation rel) {
  const auto key = normalized_pair(a, b);
  const auto it = truth.find(key);
  if (it != truth.end()) {
    if (it->second != rel) {
      throw ConsistencyError("conflicting relations for pair (" + key.first +
                             ", " + key.second + "): " +
                             to_string(it->second) + " vs " + to_string(rel));
    }
    return;
  }
  truth.emplace(key, rel);
}

/// Execution policy for the compute kernels. Seq is the default and is
/// bitwise deterministic; Par shards rows across std::async workers and
/// keeps per-row results exact (no floating-point reassociation across
/// rows).
enum class Exec { Seq, Par };

/// Deterministic random source. Wraps mt19937_64 so every component draws
/// from the same engine family and uniform doubles are generated the same
/// way everywhere (53-bit mantissa scaling, not distribution objects whose
/// output may vary across standard libraries).
class Rng {
public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Uniform real in [0, 1).
  real uniform() {
    return static_cast<real>(engine_() >> 11) * 0x1.0p-53;
  }

  /// Uniform real in [lo, hi).
  real uniform(real lo, real hi) { return lo + (hi - lo) * uniform(); }

  /// Uniform integer in [0, n).
  index uniform_index(index n) {
    // Rejection sampling to avoid modulo bias.
    const std::uint64_t un = static_cast<std::uint64_t>(n);
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % un;
    std::uint64_t x;
    do {
      x = engine_();
    } while (x >= limit);
    return static_cast<index>(x % un);
  }

  bool bernoulli(real p) { return uniform() < p; }

  /// Poisson draw by inversion (small means only, which is all the
  /// generators need).
  index poisson(real mean) {
    real l = std::exp(-mean);
    index k = 0;
    real p = 1.0;
    do {
      ++k;
      p *= uniform();
    } while (p > l);
    return k - 1;
  }

  real normal(real mu, real sigma) {
    // Box-Muller; one value per call keeps the stream position simple.
    real u1 = uniform();
    real u2 = uniform();
    while (u1 <= 0.0) u1 = uniform();
    return mu + sigma * std::sqrt(-2.0 * std::log(u1)) *
                    std::cos(2.0 * 3.141592653589793238462643383279502884 * u2);
  }

  std::uint64_t raw() { return engine_(); }

private:
  std::mt19937_64 engine_;
};

}  // namespace daac

#endif  // DAAC_COMMON_HPP
