// Copyright 2026 The DAAC Authors
// SPDX-License-Identifier: Apache-2.0

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <map>
#include <string>
#include <vector>

#include "daac/ingest.hpp"

namespace {
using daac::index;
using daac::InteractionTable;
using daac::LabeledDataset;
using daac::MentionTable;
using daac::real;
using daac::Relation;

namespace {

// Writes content to a fresh file under the test scratch directory and
// returns its path.
std::string write_file(const std::string& name, const std::string& content) {
  const auto dir = std::filesystem::temp_directory_path() / "daac_ingest_test";
  std::filesystem::create_directories(dir);
  const auto path = dir / name;
  std::ofstream out(path);
  out << content;
  return path.string();
}

}  // namespace

TEST_CASE("interaction loading") {
  SUBCASE("skips comments and blanks, sums duplicates, orders records") {
    const std::string path = write_file("inter_ok.tsv",
                                        "# src\tdst\tweight\n"
                                        "\n"
                                        "b\ta\t2\n"
                                        "a\tc\t1.5\n"
                                        "a\tb\t1\r\n"
                                        "a\tb\t0.25\n");
    const InteractionTable t = daac::load_interactions(path);
    REQUIRE(t.records.size() == 3);
    CHECK(t.records[0].src == "a");
    CHECK(t.records[0].dst == "b");
    CHECK(t.records[0].weight == 1.25);
    CHECK(t.records[1].src == "a");
    CHECK(t.records[1].dst == "c");
    CHECK(t.records[2].src == "b");
    CHECK(t.records[2].dst == "a");
    CHECK(t.records[2].weight == 2.0);
  }

  SUBCASE("missing file") {
    CHECK_THROWS_AS(daac::load_interactions("/nonexistent/inter.tsv"),
                    daac::ParseError);
  }

  SUBCASE("wrong field count names the line") {
    const std::string path = write_file("inter_fields.tsv", "a\tb\n");
    try {
      daac::load_interactions(path);
      FAIL("expected ParseError");
    } catch (const daac::ParseError& e) {
      const std::string what = e.what();
      CHECK(what.find(":1:") != std::string::npos);
      CHECK(what.find("expected 3 tab-separated fields") != std::string::npos);
    }
  }

  SUBCASE("empty field") {
    const std::string path = write_file("inter_empty.tsv", "a\t\t1\n");
    CHECK_THROWS_AS(daac::load_interactions(path), daac::ParseError);
  }

  SUBCASE("malformed weight") {
    CHECK_THROWS_AS(
        daac::load_interactions(write_file("inter_num.tsv", "a\tb\t2.0x\n")),
        daac::ParseError);
    CHECK_THROWS_AS(
        daac::load_interactions(write_file("inter_sp.tsv", "a\tb\t 2\n")),
        daac::ParseError);
  }

  SUBCASE("nonpositive weight") {
    CHECK_THROWS_AS(
        daac::load_interactions(write_file("inter_zero.tsv", "a\tb\t0\n")),
        daac::DomainError);
    CHECK_THROWS_AS(
        daac::load_interactions(write_file("inter_neg.tsv", "a\tb\t-1\n")),
        daac::DomainError);
  }
}

TEST_CASE("mention loading") {
  const std::string path = write_file("mentions.tsv",
                                      "# author\ttarget\tsentiment\n"
                                      "a\tb\t-1\n"
                                      "a\ta\t1\n"
                                      "b\tc\t0.5\n"
                                      "c\tc\t-2\n");
  const MentionTable t = daac::load_mentions(path);
  REQUIRE(t.events.size() == 2);
  CHECK(t.self_mentions_dropped == 2);
  CHECK(t.events[0].author == "a");
  CHECK(t.events[0].target == "b");
  CHECK(t.events[0].sentiment == -1.0);
  CHECK(t.events[1].author == "b");
  CHECK(t.events[1].sentiment == 0.5);
}

TEST_CASE("label loading") {
  const std::string ok = write_file("labels_ok.tsv",
                                    "u1\tred\n"
                                    "u2\tblue\n"
                                    "u1\tred\n");
  const auto labels = daac::load_labels(ok);
  CHECK(labels.size() == 2);
  CHECK(labels.at("u1") == "red");

  const std::string conflict = write_file("labels_conflict.tsv",
                                          "u1\tred\n"
                                          "u1\tblue\n");
  CHECK_THROWS_AS(daac::load_labels(conflict), daac::ConsistencyError);
  CHECK_THROWS_AS(daac::load_labels(write_file("labels_bad.tsv", "u1\n")),
                  daac::ParseError);
}

TEST_CASE("truth relation loading") {
  const std::string ok = write_file("truth_ok.tsv",
                                    "red\tblue\tantagonism\n"
                                    "blue\tgold\talliance\n"
                                    "gold\tred\tnone\n"
                                    "blue\tred\tantagonism\n");
  const daac::TruthRelations truth = daac::load_truth_relations(ok);
  CHECK(truth.size() == 3);
  CHECK(truth.at({"blue", "red"}) == Relation::Antagonism);
  CHECK(truth.at({"blue", "gold"}) == Relation::Alliance);
  CHECK(truth.at({"gold", "red"}) == Relation::None);

  CHECK_THROWS_AS(daac::load_truth_relations(
                      write_file("truth_word.tsv", "a\tb\tfriendly\n")),
                  daac::ParseError);
  // The same pair in reversed order with a different relation conflicts.
  CHECK_THROWS_AS(daac::load_truth_relations(
                      write_file("truth_conflict.tsv",
                                 "a\tb\talliance\nb\ta\tantagonism\n")),
                  daac::ConsistencyError);
}

TEST_CASE("dataset assembly cleans in the documented order") {
  // a and b interact, a and d interact; c only appears in mentions.
  InteractionTable interactions;
  interactions.records = {{"a", "b", 2.0}, {"a", "d", 1.0}};
  MentionTable mentions;
  mentions.events = {
      {"a", "b", -1.0},  // suppressed: negative on an interacting pair
      {"b", "d", -1.0},  // kept: b and d do not interact
      {"c", "a", 1.0},   // dropped: c loses its only tie to the dataset
      {"d", "a", 0.5},
  };

  const LabeledDataset data = daac::build_dataset(interactions, mentions);
  CHECK(data.users == std::vector<std::string>{"a", "b", "d"});
  CHECK(data.users_removed == 1);
  CHECK(data.events_dropped == 1);
  CHECK(data.events_suppressed == 1);
  CHECK(data.self_interactions_dropped == 0);

  CHECK(data.R.at(0, 1) == 2.0);
  CHECK(data.R.at(1, 0) == 2.0);
  CHECK(data.R.at(0, 2) == 1.0);
  CHECK(data.R.at(2, 0) == 1.0);
  CHECK(data.R.nnz() == 4);

  CHECK(data.S.at(1, 2) == -1.0);
  CHECK(data.S.at(2, 0) == 0.5);
  CHECK(data.S.nnz() == 2);

  CHECK_FALSE(data.labels.has_value());
  CHECK_FALSE(data.truth_relations.has_value());
}

TEST_CASE("dataset assembly details") {
  InteractionTable interactions;
  interactions.records = {{"a", "b", 1.0}, {"b", "b", 3.0}};
  MentionTable mentions;

  SUBCASE("self-interactions are dropped and counted") {
    const LabeledDataset data = daac::build_dataset(interactions, mentions);
    CHECK(data.self_interactions_dropped == 1);
    CHECK(data.users == std::vector<std::string>{"a", "b"});
    CHECK(data.R.nnz() == 2);
  }

  SUBCASE("zero-sentiment events never create attitude entries") {
    mentions.events = {{"a", "b", 0.0}};
    const LabeledDataset data = daac::build_dataset(interactions, mentions);
    CHECK(data.S.nnz() == 0);
    CHECK(data.events_suppressed == 0);
  }

  SUBCASE("suppression applies per event, not per accumulated pair") {
    mentions.events = {{"b", "a", 1.0}, {"b", "a", -1.0}};
    const LabeledDataset data = daac::build_dataset(interactions, mentions);
    CHECK(data.events_suppressed == 1);  // the -1 on an interacting pair
    CHECK(data.S.nnz() == 1);            // the +1 survives alone
    CHECK(data.S.at(1, 0) == 1.0);
  }

  SUBCASE("opposite sentiments on a free pair cancel to no entry") {
    InteractionTable two_pairs;
    two_pairs.records = {{"a", "b", 1.0}, {"c", "d", 1.0}};
    mentions.events = {{"a", "c", 1.0}, {"a", "c", -1.0}};
    const LabeledDataset data = daac::build_dataset(two_pairs, mentions);
    CHECK(data.events_suppressed == 0);
    CHECK(data.S.nnz() == 0);
  }

  SUBCASE("labels align to users with a placeholder for gaps") {
    std::map<std::string, std::string> labels = {
        {"a", "red"}, {"ghost", "blue"}};
    const LabeledDataset data =
        daac::build_dataset(interactions, mentions, labels);
    REQUIRE(data.labels.has_value());
    CHECK(*data.labels == std::vector<std::string>{"red", "(unlabeled)"});
    CHECK(data.unknown_label_users == 1);
  }

  SUBCASE("only isolated users means no dataset") {
    InteractionTable selfs;
    selfs.records = {{"a", "a", 1.0}};
    CHECK_THROWS_AS(daac::build_dataset(selfs, mentions),
                    daac::ConsistencyError);
  }
}

TEST_CASE("attitude symmetrization mirrors every entry") {
  InteractionTable interactions;
  interactions.records = {{"a", "b", 1.0}, {"c", "d", 1.0}};
  MentionTable mentions;
  mentions.events = {{"a", "c", 1.0}, {"c", "a", 0.5}, {"b", "d", -2.0}};

  daac::BuildOptions options;
  options.symmetrize_attitudes = true;
  const LabeledDataset data =
      daac::build_dataset(interactions, mentions, {}, {}, options);
  const auto dense = data.S.to_dense();
  CHECK(dense.max_abs_diff(dense.transposed()) == 0.0);
  // a<->c accumulates both directions: 1.0 + 0.5 each way.
  CHECK(data.S.at(0, 2) == 1.5);
  CHECK(data.S.at(2, 0) == 1.5);
  CHECK(data.S.at(1, 3) == -2.0);
  CHECK(data.S.at(3, 1) == -2.0);
}

TEST_CASE("assembly invariants hold on randomized tables") {
  daac::Rng rng(31337);
  const std::vector<std::string> names = {"a", "b", "c", "d", "e",
                                          "f", "g", "h"};
  for (int trial = 0; trial < 50; ++trial) {
    InteractionTable interactions;
    const index n_inter = 1 + rng.uniform_index(12);
    for (index r = 0; r < n_inter; ++r) {
      interactions.records.push_back(
          {names[static_cast<std::size_t>(rng.uniform_index(8))],
           names[static_cast<std::size_t>(rng.uniform_index(8))],
           rng.uniform(0.5, 3.0)});
    }
    MentionTable mentions;
    const index n_ment = rng.uniform_index(20);
    for (index r = 0; r < n_ment; ++r) {
      std::string author =
          names[static_cast<std::size_t>(rng.uniform_index(8))];
      std::string target =
          names[static_cast<std::size_t>(rng.uniform_index(8))];
      if (author == target) continue;
      mentions.events.push_back(
          {std::move(author), std::move(target),
           rng.uniform(-1.0, 1.0)});
    }

    bool any_real_edge = false;
    for (const auto& rec : interactions.records) {
      any_real_edge = any_real_edge || rec.src != rec.dst;
    }
    if (!any_real_edge) {
      CHECK_THROWS_AS(daac::build_dataset(interactions, mentions),
                      daac::ConsistencyError);
      continue;
    }

    const LabeledDataset data = daac::build_dataset(interactions, mentions);
    CHECK(std::is_sorted(data.users.begin(), data.users.end()));
    CHECK(data.R.symmetric());
    for (const auto& t : data.R.to_triplets()) {
      CHECK(t.row != t.col);
      CHECK(t.value > 0.0);
    }
    for (const auto& t : data.S.to_triplets()) {
      CHECK(t.row != t.col);
    }
    const index total_events = static_cast<index>(mentions.events.size());
    index surviving = 0;
    for (const auto& ev : mentions.events) {
      const bool known = data.user_index.count(ev.author) != 0 &&
                         data.user_index.count(ev.target) != 0;
      if (known) ++surviving;
    }
    CHECK(data.events_dropped == total_events - surviving);

    // Rebuilding from the same tables is fully deterministic.
    const LabeledDataset again = daac::build_dataset(interactions, mentions);
    CHECK(again.users == data.users);
    CHECK(again.S.to_dense().max_abs_diff(data.S.to_dense()) == 0.0);
    CHECK(again.R.to_dense().max_abs_diff(data.R.to_dense()) == 0.0);
  }
}

}  // namespace
