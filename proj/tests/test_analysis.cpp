// Copyright 2026 The DAAC Authors
// SPDX-License-Identifier: Apache-2.0

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <map>
#include <string>
#include <vector>

#include "daac/analysis.hpp"
#include "daac/sparse_matrix.hpp"

namespace {
using daac::Assignment;
using daac::DenseMatrix;
using daac::index;
using daac::real;
using daac::Relation;
using daac::RelationReport;
using daac::SparseMatrix;

TEST_CASE("assignment takes the row argmax") {
  const DenseMatrix U = DenseMatrix::from_rows({
      {0.1, 0.9, 0.2},
      {0.5, 0.5, 0.4},   // tie between 0 and 1 -> lowest index
      {0.0, 0.0, 0.0},   // all-zero row -> community 0, flagged
      {0.0, 0.0, 0.7},
  });
  const Assignment a = daac::assign(U);
  CHECK(a.k == 3);
  CHECK(a.community_of == std::vector<index>{1, 0, 0, 2});
  CHECK(a.zero_rows == std::vector<index>{2});

  daac::Rng rng(42);
  DenseMatrix V(30, 4);
  for (index i = 0; i < 30; ++i) {
    for (index l = 0; l < 4; ++l) V(i, l) = rng.uniform();
  }
  const Assignment b = daac::assign(V);
  for (index i = 0; i < 30; ++i) {
    for (index l = 0; l < 4; ++l) {
      CHECK(V(i, b.community_of[static_cast<std::size_t>(i)]) >= V(i, l));
    }
  }
  CHECK(b.zero_rows.empty());
}

TEST_CASE("relation extraction validates its inputs") {
  CHECK_THROWS_AS(daac::extract_relations(DenseMatrix(2, 3), 0.05),
                  daac::DimensionError);
  CHECK_THROWS_AS(daac::extract_relations(DenseMatrix(1, 1), 0.05),
                  daac::ConfigError);
  const DenseMatrix H = DenseMatrix::identity(2);
  CHECK_THROWS_AS(daac::extract_relations(H, -0.1), daac::ConfigError);
  CHECK_THROWS_AS(daac::extract_relations(H, 1.0), daac::ConfigError);
  CHECK_NOTHROW(daac::extract_relations(H, 0.0));
}

TEST_CASE("relation extraction symmetrizes the input") {
  const DenseMatrix H = DenseMatrix::from_rows({{5.0, 4.0}, {-2.0, 7.0}});
  const RelationReport r = daac::extract_relations(H, 0.05);
  CHECK(r.strength(0, 1) == 1.0);
  CHECK(r.strength(1, 0) == 1.0);
  CHECK(r.relation_at(0, 1) == Relation::Alliance);
  CHECK(r.relation_at(1, 0) == Relation::Alliance);
  CHECK(r.intra == std::vector<real>{5.0, 7.0});
}

TEST_CASE("five-community relation matrix worked example") {
  // One allied triangle (communities 0, 1, 2), everything else hostile.
  const DenseMatrix H = DenseMatrix::from_rows({
      {87, 61, 34, -21, -32},
      {61, 52, 46, -4, -22},
      {34, 46, 39, -4, -61},
      {-21, -4, -4, 121, -31},
      {-32, -22, -61, -31, 64},
  });
  const RelationReport r = daac::extract_relations(H, 0.05);
  CHECK(r.intra == std::vector<real>{87, 52, 39, 121, 64});

  index alliances = 0;
  index antagonisms = 0;
  for (index i = 0; i < 5; ++i) {
    CHECK(r.relation_at(i, i) == Relation::None);
    for (index j = i + 1; j < 5; ++j) {
      CHECK(r.relation_at(i, j) == r.relation_at(j, i));
      if (r.relation_at(i, j) == Relation::Alliance) ++alliances;
      if (r.relation_at(i, j) == Relation::Antagonism) ++antagonisms;
    }
  }
  CHECK(alliances == 3);
  CHECK(antagonisms == 7);
  CHECK(r.relation_at(0, 1) == Relation::Alliance);
  CHECK(r.relation_at(0, 2) == Relation::Alliance);
  CHECK(r.relation_at(1, 2) == Relation::Alliance);
  CHECK(r.relation_at(1, 3) == Relation::Antagonism);

  // A coarser threshold (gate 6.1 against the weakest links at |-4|)
  // reclassifies the two faintest pairs as None.
  const RelationReport coarse = daac::extract_relations(H, 0.10);
  CHECK(coarse.relation_at(1, 3) == Relation::None);
  CHECK(coarse.relation_at(2, 3) == Relation::None);
  CHECK(coarse.relation_at(0, 3) == Relation::Antagonism);
}

TEST_CASE("two-community relation matrix worked example") {
  const DenseMatrix H = DenseMatrix::from_rows({{259, -138}, {-138, 112}});
  const RelationReport r = daac::extract_relations(H, 0.05);
  CHECK(r.relation_at(0, 1) == Relation::Antagonism);
  CHECK(r.intra == std::vector<real>{259, 112});
}

TEST_CASE("threshold comparison is strict") {
  // Gate is 0.05 * 10 = 0.5; an entry exactly at the gate stays None.
  const DenseMatrix H = DenseMatrix::from_rows({
      {0.0, 10.0, 0.5},
      {10.0, 0.0, 0.0},
      {0.5, 0.0, 0.0},
  });
  const RelationReport r = daac::extract_relations(H, 0.05);
  CHECK(r.relation_at(0, 1) == Relation::Alliance);
  CHECK(r.relation_at(0, 2) == Relation::None);
  CHECK(r.relation_at(1, 2) == Relation::None);
}

TEST_CASE("majority labels with ties and empty communities") {
  Assignment a;
  a.k = 3;
  a.community_of = {0, 0, 0, 1, 1, 1, 1};
  const std::vector<std::string> labels = {"red",  "red",  "blue", "blue",
                                           "blue", "gold", "gold"};
  const auto named = daac::majority_label(a, labels);
  CHECK(named.at(0) == "red");
  CHECK(named.at(1) == "blue");  // blue and gold tie 2-2 -> lexicographic
  CHECK(named.at(2) == "(empty)");

  Assignment wrong = a;
  wrong.community_of = {0, 1};
  CHECK_THROWS_AS(daac::majority_label(wrong, labels), daac::DimensionError);
}

TEST_CASE("attitude aggregation sums entries by community block") {
  // Users 0,1 -> community 0; users 2,3 -> community 1.
  const SparseMatrix S = SparseMatrix::from_triplets(
      4, 4,
      {{0, 1, 2.0}, {1, 0, 1.0}, {0, 2, -3.0}, {2, 0, -1.0},
       {2, 3, 4.0}, {3, 2, 0.5}, {1, 3, -0.25}});
  Assignment a;
  a.k = 2;
  a.community_of = {0, 0, 1, 1};
  const DenseMatrix got = daac::aggregate_attitudes(S, a, 2);
  CHECK(got(0, 0) == 3.0);
  CHECK(got(0, 1) == -3.25);
  CHECK(got(1, 0) == -1.0);
  CHECK(got(1, 1) == 4.5);

  Assignment short_assign;
  short_assign.k = 2;
  short_assign.community_of = {0, 1};
  CHECK_THROWS_AS(daac::aggregate_attitudes(S, short_assign, 2),
                  daac::DimensionError);
  CHECK_THROWS_AS(daac::aggregate_attitudes(SparseMatrix(3, 4), a, 2),
                  daac::DimensionError);
}

TEST_CASE("attitude aggregation matches a brute-force double loop") {
  daac::Rng rng(7);
  const index n = 25;
  const index k = 4;
  std::vector<daac::Triplet> trips;
  for (index i = 0; i < n; ++i) {
    for (index j = 0; j < n; ++j) {
      if (i != j && rng.bernoulli(0.2)) {
        trips.push_back({i, j, rng.uniform(-1.0, 1.0)});
      }
    }
  }
  const SparseMatrix S = SparseMatrix::from_triplets(n, n, std::move(trips));
  Assignment a;
  a.k = k;
  a.community_of.resize(static_cast<std::size_t>(n));
  for (auto& c : a.community_of) c = rng.uniform_index(k);

  const DenseMatrix dense = S.to_dense();
  DenseMatrix want(k, k);
  for (index i = 0; i < n; ++i) {
    for (index j = 0; j < n; ++j) {
      want(a.community_of[static_cast<std::size_t>(i)],
           a.community_of[static_cast<std::size_t>(j)]) += dense(i, j);
    }
  }
  const DenseMatrix got = daac::aggregate_attitudes(S, a, k);
  CHECK(got.max_abs_diff(want) < 1e-12);
}

TEST_CASE("relation accuracy scores truth pairs against detected relations") {
  RelationReport r;
  r.k = 3;
  r.relation.assign(9, Relation::None);
  const auto set = [&](index i, index j, Relation rel) {
    r.relation[static_cast<std::size_t>(i * 3 + j)] = rel;
    r.relation[static_cast<std::size_t>(j * 3 + i)] = rel;
  };
  set(0, 1, Relation::Antagonism);
  set(0, 2, Relation::Alliance);
  set(1, 2, Relation::None);

  std::map<index, std::string> labels = {{0, "a"}, {1, "b"}, {2, "c"}};
  daac::TruthRelations truth;
  daac::insert_truth_relation(truth, "a", "b", Relation::Antagonism);
  daac::insert_truth_relation(truth, "a", "c", Relation::Alliance);
  daac::insert_truth_relation(truth, "b", "c", Relation::Antagonism);
  CHECK(daac::relation_accuracy(r, labels, truth) == doctest::Approx(2.0 / 3.0));

  SUBCASE("empty truth scores one") {
    CHECK(daac::relation_accuracy(r, labels, {}) == 1.0);
  }

  SUBCASE("a name nobody claims counts its pairs incorrect") {
    labels.erase(2);
    CHECK(daac::relation_accuracy(r, labels, truth) ==
          doctest::Approx(1.0 / 3.0));
  }

  SUBCASE("a name claimed twice counts its pairs incorrect") {
    labels[2] = "b";
    // Pairs touching "b" are ambiguous and "a"-"c" has no claimant for c.
    CHECK(daac::relation_accuracy(r, labels, truth) == 0.0);
  }

  SUBCASE("a self-pair resolves to one community and counts incorrect") {
    daac::TruthRelations self;
    daac::insert_truth_relation(self, "a", "a", Relation::Alliance);
    daac::insert_truth_relation(self, "a", "c", Relation::Alliance);
    CHECK(daac::relation_accuracy(r, labels, self) == doctest::Approx(0.5));
  }
}

}  // namespace
