// Copyright 2026 The DAAC Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef DAAC_INGEST_HPP
#define DAAC_INGEST_HPP

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "daac/common.hpp"
#include "daac/sparse_matrix.hpp"

namespace daac {

/// One directed interaction record (weights of duplicate (src, dst) pairs
/// are summed at load time).
struct InteractionRecord {
  std::string src;
  std::string dst;
  real weight;
};

struct InteractionTable {
  std::vector<InteractionRecord> records;
};

/// One scored mention. Zero-sentiment events are kept as records but never
/// create an attitude entry.
struct MentionEvent {
  std::string author;
  std::string target;
  real sentiment;
};

struct MentionTable {
  std::vector<MentionEvent> events;
  index self_mentions_dropped = 0;
};

/// Users, matrices, and optional ground truth, ready for the solver.
struct LabeledDataset {
  std::vector<std::string> users;          // lexicographically ordered ids
  std::map<std::string, index> user_index;
  SparseMatrix R;                          // symmetric interactions
  SparseMatrix S;                          // signed attitudes
  std::optional<std::vector<std::string>> labels;  // per user, aligned
  std::optional<TruthRelations> truth_relations;

  // Cleaning counters.
  index users_removed = 0;       // zero interaction degree
  index events_dropped = 0;      // events of removed users
  index events_suppressed = 0;   // negative sentiment on an interacting pair
  index self_interactions_dropped = 0;
  index unknown_label_users = 0; // labels referencing unknown users
};

struct BuildOptions {
  bool symmetrize_attitudes = false;  // S <- S + S^T after accumulation
};

/// Parses `src<TAB>dst<TAB>weight` lines. '#' lines and blank lines are
/// skipped; malformed lines raise ParseError with the line number;
/// nonpositive weights raise DomainError.
InteractionTable load_interactions(const std::string& path);

/// Parses `author<TAB>target<TAB>sentiment` lines. Self-mentions are
/// dropped and counted.
MentionTable load_mentions(const std::string& path);

/// Parses `user<TAB>label` lines.
std::map<std::string, std::string> load_labels(const std::string& path);

/// Parses `labelA<TAB>labelB<TAB>{antagonism|alliance|none}` lines into the
/// symmetric closure; conflicting duplicates raise ConsistencyError.
TruthRelations load_truth_relations(const std::string& path);

/// Assembles the dataset:
///   1. symmetrize interactions (directed counts plus their transpose),
///      dropping self-interactions;
///   2. remove users with zero interaction degree along with all their
///      mention events;
///   3. accumulate attitudes, skipping negative-sentiment events between
///      pairs that interact;
///   4. drop attitude accumulations that sum to exactly zero;
///   5. index the surviving users lexicographically.
LabeledDataset build_dataset(
    const InteractionTable& interactions, const MentionTable& mentions,
    const std::optional<std::map<std::string, std::string>>& labels = {},
    const std::optional<TruthRelations>& truth = {},
    const BuildOptions& options = {});

}  // namespace daac

#endif  // DAAC_INGEST_HPP
