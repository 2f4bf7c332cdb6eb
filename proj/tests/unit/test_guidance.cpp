// Copyright 2026 The HQS Authors
// SPDX-License-Identifier: Apache-2.0

#include <cmath>
#include <numeric>
#include <random>
#include <vector>

#include "doctest.h"
#include "hqs/error.hpp"
#include "hqs/guidance.hpp"
#include "support/fixtures.hpp"

using namespace hqs;

namespace {

Catalogue two_points(std::vector<double> x, std::vector<double> y) {
  return Catalogue({"x", "y"}, {ItemVector::dense(std::move(x)), ItemVector::dense(std::move(y))});
}

std::vector<ChildScore> scores_of(const std::vector<double>& s) {
  std::vector<ChildScore> out;
  for (std::size_t i = 0; i < s.size(); ++i) out.push_back({NodeId{static_cast<std::uint32_t>(i + 1)}, s[i]});
  return out;
}

}  // namespace

TEST_CASE("average cosine of a singleton own cluster is 1") {
  const auto cat = two_points({3, 4}, {0, 1});
  const std::vector<std::size_t> self{0};
  CHECK(similarity(AverageCosineExcludingSelf{}, cat, 0, self) == 1.0);
}

TEST_CASE("average cosine excludes the item itself") {
  const auto cat = two_points({1, 0}, {0, 1});
  const std::vector<std::size_t> both{0, 1};
  CHECK(similarity(AverageCosineExcludingSelf{}, cat, 0, both) == 0.0);
  const std::vector<std::string> named{"x", "y"};
  CHECK(similarity(AverageCosineExcludingSelf{}, cat, "x", named) == 0.0);
  const std::vector<std::size_t> other{1};
  CHECK(similarity(AverageCosineExcludingSelf{}, cat, 0, other) == 0.0);
}

TEST_CASE("inverse squared distance at the centroid") {
  const auto cat = two_points({1, 1}, {1, 1});
  const std::vector<std::size_t> both{0, 1};
  CHECK(similarity(InverseSquaredEuclideanToCentroid{}, cat, 0, both) == doctest::Approx(10000.0).epsilon(1e-12));
}

TEST_CASE("custom similarity is called with the cluster") {
  const auto cat = two_points({1, 0}, {0, 1});
  CustomSimilarity size_of = [](const Catalogue&, std::size_t, std::span<const std::size_t> c) {
    return static_cast<double>(c.size());
  };
  const std::vector<std::size_t> both{0, 1};
  CHECK(similarity(size_of, cat, 0, both) == 2.0);
  CHECK(similarity_name(SimilarityKind{size_of}) == "custom");
  CHECK(similarity_name(SimilarityKind{AverageCosineExcludingSelf{}}) == "avg-cosine");
  CHECK(similarity_name(SimilarityKind{InverseSquaredEuclideanToCentroid{}}) == "inv-sq-euclid");
}

TEST_CASE("guidance examples") {
  const TemperatureSchedule sched{};
  CHECK(guidance(sched, 0, scores_of({-3.0})).probs == std::vector<double>{1.0});
  const auto eq = guidance(sched, 0, scores_of({0.2, 0.2, 0.2, 0.2}));
  for (double p : eq.probs) CHECK(p == doctest::Approx(0.25).epsilon(1e-15));
  const auto two = guidance(sched, 0, scores_of({0.061, 0.0277}));
  CHECK(two.probs[0] == doctest::Approx(0.9654437697137235).epsilon(1e-12));
  CHECK(two.prob_of(NodeId{1}) == two.probs[0]);
  CHECK_THROWS_AS(two.prob_of(NodeId{9}), InputError);
}

TEST_CASE("guidance errors") {
  const TemperatureSchedule sched{};
  CHECK_THROWS_AS(guidance(sched, 0, std::vector<ChildScore>{}), InputError);
  CHECK_THROWS_AS(guidance(sched, 0, scores_of({0.1, NAN})), NumericError);
  CHECK_THROWS_AS(guidance(sched, 0, scores_of({0.1, INFINITY})), NumericError);
  CHECK_THROWS_AS((TemperatureSchedule{0.0, 1.0}.validate()), InputError);
  CHECK_THROWS_AS((TemperatureSchedule{0.01, 0.5}.validate()), InputError);
}

TEST_CASE("temperature grows with depth") {
  const TemperatureSchedule sched{0.01, 2.0};
  CHECK(sched.at_depth(0) == 0.01);
  CHECK(sched.at_depth(3) == doctest::Approx(0.08).epsilon(1e-15));
  // larger temperature flattens the distribution
  const auto s = scores_of({0.05, 0.0});
  CHECK(guidance(sched, 3, s).probs[0] < guidance(sched, 0, s).probs[0]);
}

TEST_CASE("huge score gaps stay finite") {
  const auto g = guidance(TemperatureSchedule{}, 0, scores_of({1e6, -1e6, 0.0}));
  CHECK(g.probs[0] == 1.0);
  CHECK(g.probs[1] == 0.0);
}

TEST_CASE("scorer agrees with the naive similarity on random trees") {
  std::mt19937_64 rng(29);
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t n = std::uniform_int_distribution<std::size_t>(1, 30)(rng);
    const auto h = Hierarchy::from_spec(::hqs::testing::random_tree(rng, n, 5));
    const auto cat = ::hqs::testing::random_catalogue(rng, n, 4);
    for (const SimilarityKind& kind :
         {SimilarityKind{AverageCosineExcludingSelf{}}, SimilarityKind{InverseSquaredEuclideanToCentroid{}}}) {
      const ClusterScorer scorer(h, cat, kind);
      for (std::size_t p = 0; p < n; ++p) {
        for (std::uint32_t i = 0; i < h.node_count(); ++i) {
          const NodeId c{i};
          std::vector<std::size_t> members;
          for (const auto& id : h.cluster_items(c)) members.push_back(cat.index_of(id));
          const double naive = similarity(kind, cat, scorer.catalogue_index(p), members);
          CHECK(scorer.score(p, c) == doctest::Approx(naive).epsilon(1e-9));
        }
      }
    }
  }
}

TEST_CASE("scorer on sparse tf-idf vectors") {
  const std::vector<std::pair<std::string, std::string>> docs{
      {"a", "red shoe"}, {"b", "red boot"}, {"c", "green hat"}, {"d", "green cap"}};
  const auto cat = build_tfidf(docs);
  const auto h = parse_hierarchy(
      R"({"id":"r","children":[{"id":"l","items":["a","b"]},{"id":"m","items":["c","d"]}]})");
  const ClusterScorer scorer(h, cat, AverageCosineExcludingSelf{});
  const NodeId l = h.children(h.root())[0];
  const NodeId m = h.children(h.root())[1];
  const std::size_t a = h.item_position("a");
  CHECK(scorer.score(a, l) > 0.0);
  CHECK(scorer.score(a, m) == 0.0);
  const std::vector<std::size_t> lm{cat.index_of("a"), cat.index_of("b")};
  CHECK(scorer.score(a, l) == doctest::Approx(similarity(AverageCosineExcludingSelf{}, cat, cat.index_of("a"), lm)));
}

TEST_CASE("scorer rejects item mismatches") {
  const auto cat = two_points({1, 0}, {0, 1});
  CHECK_THROWS_AS(ClusterScorer(parse_hierarchy(R"({"id":"r","items":["x"]})"), cat, AverageCosineExcludingSelf{}),
                  InputError);
  CHECK_THROWS_AS(
      ClusterScorer(parse_hierarchy(R"({"id":"r","items":["x","z"]})"), cat, AverageCosineExcludingSelf{}),
      InputError);
}
