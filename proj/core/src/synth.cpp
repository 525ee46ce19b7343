// Copyright 2026 The DAAC Authors
// SPDX-License-Identifier: Apache-2.0

#include "daac/synth.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <numeric>

namespace daac {

namespace {

std::vector<index> resolve_sizes(const PlantedSpec& spec) {
  if (!spec.sizes.empty()) {
    if (static_cast<index>(spec.sizes.size()) != spec.k) {
      throw ConfigError("generate: sizes must list one entry per community");
    }
    if (std::accumulate(spec.sizes.begin(), spec.sizes.end(), index{0}) !=
        spec.n) {
      throw ConfigError("generate: sizes must sum to n");
    }
    return spec.sizes;
  }
  std::vector<index> sizes(static_cast<std::size_t>(spec.k), spec.n / spec.k);
  for (index i = 0; i < spec.n % spec.k; ++i) ++sizes[static_cast<std::size_t>(i)];
  return sizes;
}

std::string padded_user_id(index i, index n) {
  std::size_t width = 1;
  for (index v = n - 1; v >= 10; v /= 10) ++width;
  std::string digits = std::to_string(i);
  return "u" + std::string(width - digits.size(), '0') + digits;
}

}  // namespace

void PlantedSpec::validate() const {
  if (k < 2) throw ConfigError("PlantedSpec: k must be >= 2");
  if (n < k) throw ConfigError("PlantedSpec: n must be >= k");
  if (!(p_in > 0.0) || p_in > 1.0) {
    throw ConfigError("PlantedSpec: p_in must lie in (0, 1]");
  }
  if (p_out < 0.0 || p_out > 1.0) {
    throw ConfigError("PlantedSpec: p_out must lie in [0, 1]");
  }
  if (p_in <= p_out) {
    throw ConfigError("PlantedSpec: planting requires p_in > p_out");
  }
  if (p_att_in < 0.0 || p_att_in > 1.0 || p_att_out < 0.0 || p_att_out > 1.0) {
    throw ConfigError("PlantedSpec: attitude probabilities must lie in [0, 1]");
  }
  if (!(w_in_mean > 0.0)) throw ConfigError("PlantedSpec: w_in_mean must be > 0");
  if (!(att_strength > 0.0)) {
    throw ConfigError("PlantedSpec: att_strength must be > 0");
  }
  if (noise < 0.0 || noise >= 0.5) {
    throw ConfigError("PlantedSpec: noise must lie in [0, 0.5)");
  }
  if (static_cast<index>(relations.size()) != k * k) {
    throw ConfigError("PlantedSpec: relations must be a k x k layout");
  }
  for (index i = 0; i < k; ++i) {
    for (index j = i + 1; j < k; ++j) {
      if (relation_at(i, j) != relation_at(j, i)) {
        throw ConfigError("PlantedSpec: relations must be symmetric");
      }
    }
  }
}

PlantedInstance generate(const PlantedSpec& spec) {
  spec.validate();
  const std::vector<index> sizes = resolve_sizes(spec);
  for (std::size_t c = 0; c < sizes.size(); ++c) {
    if (sizes[c] < 2) {
      // A singleton community cannot receive the guaranteed
      // intra-community interaction.
      throw ConfigError("generate: community " + std::to_string(c) +
                        " has fewer than 2 members");
    }
  }

  const index n = spec.n;
  PlantedInstance out;
  out.communities.reserve(static_cast<std::size_t>(n));
  for (index c = 0; c < spec.k; ++c) {
    for (index i = 0; i < sizes[static_cast<std::size_t>(c)]; ++i) {
      out.communities.push_back(c);
    }
  }
  out.user_ids.reserve(static_cast<std::size_t>(n));
  out.labels.reserve(static_cast<std::size_t>(n));
  for (index i = 0; i < n; ++i) {
    out.user_ids.push_back(padded_user_id(i, n));
    out.labels.push_back(
        "c" + std::to_string(out.communities[static_cast<std::size_t>(i)]));
  }

  Rng rng(spec.seed);

  // Interactions: undirected, weight 1 + Poisson so degree normalization is
  // exercised with non-uniform weights.
  std::vector<Triplet> r_trips;
  std::vector<real> degree(static_cast<std::size_t>(n), 0.0);
  auto add_edge = [&](index i, index j, real w) {
    r_trips.push_back({i, j, w});
    r_trips.push_back({j, i, w});
    degree[static_cast<std::size_t>(i)] += w;
    degree[static_cast<std::size_t>(j)] += w;
  };
  for (index i = 0; i < n; ++i) {
    for (index j = i + 1; j < n; ++j) {
      const bool same =
          out.communities[static_cast<std::size_t>(i)] ==
          out.communities[static_cast<std::size_t>(j)];
      const real p = same ? spec.p_in : spec.p_out;
      if (rng.bernoulli(p)) {
        add_edge(i, j, 1.0 + static_cast<real>(rng.poisson(spec.w_in_mean)));
      }
    }
  }
  // Isolated-user repair: one interaction with a random same-community mate.
  std::vector<index> community_begin(static_cast<std::size_t>(spec.k), 0);
  for (index c = 1; c < spec.k; ++c) {
    community_begin[static_cast<std::size_t>(c)] =
        community_begin[static_cast<std::size_t>(c) - 1] +
        sizes[static_cast<std::size_t>(c) - 1];
  }
  for (index i = 0; i < n; ++i) {
    if (degree[static_cast<std::size_t>(i)] > 0.0) continue;
    const index c = out.communities[static_cast<std::size_t>(i)];
    const index begin = community_begin[static_cast<std::size_t>(c)];
    const index size = sizes[static_cast<std::size_t>(c)];
    index mate = i;
    while (mate == i) mate = begin + rng.uniform_index(size);
    add_edge(i, mate, 1.0 + static_cast<real>(rng.poisson(spec.w_in_mean)));
  }
  out.R = SparseMatrix::from_triplets(n, n, std::move(r_trips));

  // Attitudes: ordered pairs. Signs follow the planted relation; noise flips
  // them. Negative attitudes on interacting pairs are withheld so ingestion
  // suppression is a no-op on this data.
  std::vector<Triplet> s_trips;
  for (index i = 0; i < n; ++i) {
    for (index j = 0; j < n; ++j) {
      if (i == j) continue;
      const index ci = out.communities[static_cast<std::size_t>(i)];
      const index cj = out.communities[static_cast<std::size_t>(j)];
      real value = 0.0;
      if (ci == cj) {
        if (!rng.bernoulli(spec.p_att_in)) continue;
        value = spec.att_strength;
      } else {
        const Relation rel = spec.relation_at(ci, cj);
        if (rel == Relation::None) continue;
        if (!rng.bernoulli(spec.p_att_out)) continue;
        value = rel == Relation::Alliance ? spec.att_strength
                                          : -spec.att_strength;
      }
      if (spec.noise > 0.0 && rng.bernoulli(spec.noise)) value = -value;
      if (value < 0.0 && out.R.at(i, j) != 0.0) continue;
      s_trips.push_back({i, j, value});
    }
  }
  out.S = SparseMatrix::from_triplets(n, n, std::move(s_trips));

  for (index a = 0; a < spec.k; ++a) {
    for (index b = a + 1; b < spec.k; ++b) {
      insert_truth_relation(out.truth, "c" + std::to_string(a),
                            "c" + std::to_string(b), spec.relation_at(a, b));
    }
  }
  return out;
}

std::vector<Relation> all_antagonism(index k) {
  std::vector<Relation> rel(static_cast<std::size_t>(k * k),
                            Relation::Antagonism);
  for (index i = 0; i < k; ++i) {
    rel[static_cast<std::size_t>(i * k + i)] = Relation::None;
  }
  return rel;
}

PlantedSpec australia_like_spec(std::uint64_t seed) {
  PlantedSpec spec;
  spec.n = 225;
  spec.k = 5;
  spec.p_in = 0.2;
  spec.p_out = 0.01;
  spec.w_in_mean = 1.0;
  spec.p_att_in = 0.1;
  spec.p_att_out = 0.05;
  spec.att_strength = 1.0;
  spec.noise = 0.05;
  spec.seed = seed;
  spec.relations = all_antagonism(spec.k);
  spec.set_relation(0, 1, Relation::Alliance);
  spec.set_relation(0, 2, Relation::Alliance);
  spec.set_relation(1, 2, Relation::Alliance);
  return spec;
}

PlantedInstance australia_like(std::uint64_t seed) {
  return generate(australia_like_spec(seed));
}

TruthRelations shuffle_relations(const TruthRelations& truth,
                                 std::uint64_t seed) {
  std::vector<std::pair<std::string, std::string>> pairs;
  std::vector<Relation> values;
  for (const auto& [pair, rel] : truth) {
    pairs.push_back(pair);
    values.push_back(rel);
  }
  const std::size_t m = values.size();
  if (m < 2) return truth;

  Rng rng(seed);
  std::vector<std::size_t> perm(m);
  const index max_agree = static_cast<index>(m) / 2;
  for (int attempt = 0; attempt < 1000; ++attempt) {
    std::iota(perm.begin(), perm.end(), std::size_t{0});
    // Fisher-Yates with the library Rng for seed-stable results.
    for (std::size_t i = m - 1; i > 0; --i) {
      const auto j = static_cast<std::size_t>(
          rng.uniform_index(static_cast<index>(i) + 1));
      std::swap(perm[i], perm[j]);
    }
    index agree = 0;
    for (std::size_t i = 0; i < m; ++i) {
      if (values[perm[i]] == values[i]) ++agree;
    }
    if (agree <= max_agree) break;
  }

  TruthRelations out;
  for (std::size_t i = 0; i < m; ++i) {
    out.emplace(pairs[i], values[perm[i]]);
  }
  return out;
}

void write_instance(const PlantedInstance& instance, const std::string& dir) {
  std::filesystem::create_directories(dir);
  const auto path = [&](const char* name) {
    return (std::filesystem::path(dir) / name).string();
  };

  std::ofstream interactions(path("interactions.tsv"));
  interactions << "# src\tdst\tweight\n";
  for (const auto& t : instance.R.to_triplets()) {
    if (t.row < t.col) {
      interactions << instance.user_ids[static_cast<std::size_t>(t.row)] << '\t'
                   << instance.user_ids[static_cast<std::size_t>(t.col)] << '\t'
                   << format_real(t.value) << '\n';
    }
  }

  std::ofstream mentions(path("mentions.tsv"));
  mentions << "# author\ttarget\tsentiment\n";
  for (const auto& t : instance.S.to_triplets()) {
    mentions << instance.user_ids[static_cast<std::size_t>(t.row)] << '\t'
             << instance.user_ids[static_cast<std::size_t>(t.col)] << '\t'
             << format_real(t.value) << '\n';
  }

  std::ofstream labels(path("labels.tsv"));
  labels << "# user\tlabel\n";
  for (std::size_t i = 0; i < instance.user_ids.size(); ++i) {
    labels << instance.user_ids[i] << '\t' << instance.labels[i] << '\n';
  }

  std::ofstream truth(path("truth_relations.tsv"));
  truth << "# labelA\tlabelB\trelation\n";
  for (const auto& [pair, rel] : instance.truth) {
    truth << pair.first << '\t' << pair.second << '\t' << to_string(rel)
          << '\n';
  }
}

}  // namespace daac
