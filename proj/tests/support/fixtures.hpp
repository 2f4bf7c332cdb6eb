// Copyright 2026 The HQS Authors
// SPDX-License-Identifier: Apache-2.0

// Random instance generators shared by the unit and acceptance tests.

#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <cstdio>
#include <numeric>
#include <random>
#include <string>
#include <vector>

#include "hqs/corpus.hpp"
#include "hqs/hierarchy.hpp"

namespace hqs::testing {

inline std::string item_name(std::size_t i) { return "i" + std::to_string(i); }

inline NodeSpec leaf(std::string id, std::vector<std::string> items) { return NodeSpec{std::move(id), {}, std::move(items)}; }

inline NodeSpec inner(std::string id, std::vector<NodeSpec> children) {
  return NodeSpec{std::move(id), std::move(children), {}};
}

namespace detail {

inline NodeSpec grow(std::mt19937_64& rng, std::vector<std::string> items, std::size_t depth, std::size_t max_depth,
                     std::size_t& counter) {
  NodeSpec node;
  node.id = "c" + std::to_string(counter++);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const bool stop = depth + 1 >= max_depth || (items.size() <= 1 && u(rng) < 0.7) || u(rng) < 0.15;
  if (stop) {
    node.items = std::move(items);
    return node;
  }
  const std::size_t max_k = std::min<std::size_t>(items.size(), 4);
  std::size_t k = std::uniform_int_distribution<std::size_t>(1, std::max<std::size_t>(max_k, 1))(rng);
  // occasionally a unary step
  if (k > 1 && u(rng) < 0.1) k = 1;
  std::shuffle(items.begin(), items.end(), rng);
  std::vector<std::size_t> cuts;
  for (std::size_t i = 1; i < items.size(); ++i) cuts.push_back(i);
  std::shuffle(cuts.begin(), cuts.end(), rng);
  cuts.resize(k - 1);
  std::sort(cuts.begin(), cuts.end());
  cuts.push_back(items.size());
  std::size_t begin = 0;
  for (std::size_t cut : cuts) {
    std::vector<std::string> part(items.begin() + static_cast<std::ptrdiff_t>(begin),
                                  items.begin() + static_cast<std::ptrdiff_t>(cut));
    node.children.push_back(grow(rng, std::move(part), depth + 1, max_depth, counter));
    begin = cut;
  }
  return node;
}

}  // namespace detail

/// Random tree over `n_items` items named i0..i{n-1}, at most `max_depth`
/// levels (root at level 1). Every leaf holds at least one item.
inline NodeSpec random_tree(std::mt19937_64& rng, std::size_t n_items, std::size_t max_depth) {
  std::vector<std::string> items;
  for (std::size_t i = 0; i < n_items; ++i) items.push_back(item_name(i));
  std::size_t counter = 0;
  return detail::grow(rng, std::move(items), 0, max_depth, counter);
}

inline Catalogue random_catalogue(std::mt19937_64& rng, std::size_t n_items, std::size_t dim) {
  std::normal_distribution<double> normal(0.0, 1.0);
  std::vector<std::string> ids;
  std::vector<ItemVector> vectors;
  for (std::size_t i = 0; i < n_items; ++i) {
    std::vector<double> v(dim);
    for (double& x : v) x = normal(rng);
    ids.push_back(item_name(i));
    vectors.push_back(ItemVector::dense(std::move(v)));
  }
  return Catalogue(std::move(ids), std::move(vectors));
}

/// Dense catalogue drawn around `centres`: item i belongs to cluster
/// labels[i] and sits at centres[labels[i]] + N(0, spread^2) noise.
inline Catalogue gaussian_catalogue(std::mt19937_64& rng, const std::vector<std::vector<double>>& centres,
                                    const std::vector<std::size_t>& labels, double spread) {
  std::normal_distribution<double> normal(0.0, spread);
  std::vector<std::string> ids;
  std::vector<ItemVector> vectors;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    std::vector<double> v = centres.at(labels[i]);
    for (double& x : v) x += normal(rng);
    ids.push_back(item_name(i));
    vectors.push_back(ItemVector::dense(std::move(v)));
  }
  return Catalogue(std::move(ids), std::move(vectors));
}

inline std::vector<std::vector<double>> random_centres(std::mt19937_64& rng, std::size_t k, std::size_t dim,
                                                       double scale) {
  std::normal_distribution<double> normal(0.0, scale);
  std::vector<std::vector<double>> centres(k, std::vector<double>(dim));
  for (auto& c : centres)
    for (double& x : c) x = normal(rng);
  return centres;
}

struct SyntheticCorpus {
  NodeSpec tree;
  Catalogue catalogue;
};

/// Nested Gaussian corpus with a tree that mirrors how it was generated.
/// Level l has branching[l] children per node; each child offsets its
/// parent's centre by N(0, scales[l]^2) per coordinate. Leaves hold
/// `leaf_size` items drawn around the leaf centre with N(0, noise^2).
inline SyntheticCorpus synthetic_hierarchical(std::uint64_t seed, const std::vector<std::size_t>& branching,
                                              const std::vector<double>& scales, std::size_t leaf_size,
                                              std::size_t dim, double noise) {
  std::mt19937_64 rng(seed);
  std::vector<std::string> ids;
  std::vector<ItemVector> vectors;
  std::size_t node_counter = 0;

  struct Frame {
    NodeSpec* node;
    std::vector<double> centre;
    std::size_t level;
  };
  SyntheticCorpus out;
  out.tree.id = "s" + std::to_string(node_counter++);
  std::vector<Frame> stack{{&out.tree, std::vector<double>(dim, 0.0), 0}};
  while (!stack.empty()) {
    Frame f = std::move(stack.back());
    stack.pop_back();
    if (f.level == branching.size()) {
      std::normal_distribution<double> jitter(0.0, noise);
      for (std::size_t i = 0; i < leaf_size; ++i) {
        std::vector<double> v = f.centre;
        for (double& x : v) x += jitter(rng);
        char name[16];
        std::snprintf(name, sizeof name, "item%06zu", ids.size());
        ids.emplace_back(name);
        f.node->items.push_back(ids.back());
        vectors.push_back(ItemVector::dense(std::move(v)));
      }
      continue;
    }
    std::normal_distribution<double> offset(0.0, scales.at(f.level));
    f.node->children.resize(branching[f.level]);
    for (auto& child : f.node->children) child.id = "s" + std::to_string(node_counter++);
    for (auto it = f.node->children.rbegin(); it != f.node->children.rend(); ++it) {
      std::vector<double> c = f.centre;
      for (double& x : c) x += offset(rng);
      stack.push_back({&*it, std::move(c), f.level + 1});
    }
  }
  out.catalogue = Catalogue(std::move(ids), std::move(vectors));
  return out;
}

}  // namespace hqs::testing
