// Copyright 2026 The DAAC Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef DAAC_SYNTH_HPP
#define DAAC_SYNTH_HPP

#include <string>
#include <vector>

#include "daac/common.hpp"
#include "daac/sparse_matrix.hpp"

namespace daac {

/// Parameters of a planted-community instance. Communities are named
/// "c0".."c{k-1}"; user ids are zero-padded ("u000", ...) so lexicographic
/// order equals numeric order.
struct PlantedSpec {
  index n = 0;
  index k = 2;
  std::vector<index> sizes;       // empty -> balanced (n/k, remainder spread)
  real p_in = 0.3;                // intra-community interaction probability
  real p_out = 0.02;              // inter-community interaction probability
  real w_in_mean = 1.0;           // weights are 1 + Poisson(w_in_mean)
  std::vector<Relation> relations;  // k*k row-major, symmetric, diagonal unused
  real p_att_in = 0.1;            // intra-community attitude probability
  real p_att_out = 0.05;          // inter-community attitude probability
  real att_strength = 1.0;
  real noise = 0.0;               // probability of flipping an attitude sign
  std::uint64_t seed = 0;

  Relation relation_at(index i, index j) const {
    return relations[static_cast<std::size_t>(i * k + j)];
  }
  void set_relation(index i, index j, Relation rel) {
    relations[static_cast<std::size_t>(i * k + j)] = rel;
    relations[static_cast<std::size_t>(j * k + i)] = rel;
  }
  void validate() const;
};

/// A generated instance together with its ground truth.
struct PlantedInstance {
  std::vector<std::string> user_ids;     // lexicographically ordered
  SparseMatrix R;
  SparseMatrix S;
  std::vector<std::string> labels;       // user -> community name
  std::vector<index> communities;        // user -> community index
  TruthRelations truth;
};

/// Samples an instance. R is symmetric with no self-loops and no isolated
/// users (isolated users are repaired with one intra-community edge);
/// attitudes are +att_strength inside communities and signed by the planted
/// relation across them, with each emitted sign flipped with probability
/// noise. Negative attitudes between interacting pairs are withheld,
/// mirroring the ingestion suppression rule, so the instance survives a
/// write/ingest round trip unchanged.
PlantedInstance generate(const PlantedSpec& spec);

/// Preset: n=225, k=5, one allied triangle (3 alliances) and 7 antagonisms,
/// noise 0.05.
PlantedInstance australia_like(std::uint64_t seed);
PlantedSpec australia_like_spec(std::uint64_t seed);

/// Returns a PlantedSpec relation layout with every off-diagonal pair
/// antagonistic.
std::vector<Relation> all_antagonism(index k);

/// Derangement-leaning shuffle of the truth relations: permutes the relation
/// multiset over the same pairs, resampling until at most half of the pairs
/// keep their original relation (a uniform permutation of a lopsided
/// multiset often lands near the identity, which is useless as a negative
/// control).
TruthRelations shuffle_relations(const TruthRelations& truth,
                                 std::uint64_t seed);

/// Serializes an instance into the ingestion TSV formats: interactions.tsv
/// (upper triangle of R), mentions.tsv, labels.tsv, truth_relations.tsv.
void write_instance(const PlantedInstance& instance, const std::string& dir);

}  // namespace daac

#endif  // DAAC_SYNTH_HPP
