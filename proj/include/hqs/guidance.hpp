// Copyright 2026 The HQS Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "hqs/corpus.hpp"
#include "hqs/hierarchy.hpp"

namespace hqs {

/// Mean cosine between x and the other members of the cluster; 1 when the
/// cluster is exactly {x}. Cosine against a zero vector counts as 0.
struct AverageCosineExcludingSelf {};

/// 1 / (||v_x - centroid||^2 + kOffset)
struct InverseSquaredEuclideanToCentroid {
  static constexpr double kOffset = 1e-4;
};

/// Caller-supplied score of catalogue item `x` against a cluster of
/// catalogue indices.
using CustomSimilarity =
    std::function<double(const Catalogue&, std::size_t x, std::span<const std::size_t> cluster)>;

using SimilarityKind = std::variant<AverageCosineExcludingSelf, InverseSquaredEuclideanToCentroid, CustomSimilarity>;

std::string_view similarity_name(const SimilarityKind& kind);

double cosine(const ItemVector& a, const ItemVector& b);

/// Direct evaluation of S(x, cluster) from the raw vectors. Throws
/// InputError on an empty cluster.
double similarity(const SimilarityKind& kind, const Catalogue& catalogue, std::size_t x,
                  std::span<const std::size_t> cluster);
double similarity(const SimilarityKind& kind, const Catalogue& catalogue, std::string_view x,
                  std::span<const std::string> cluster);

/// Boltzmann temperature delta_t = delta_base * nu^t.
struct TemperatureSchedule {
  double delta_base = 0.01;
  double nu = 1.0;

  /// Throws InputError unless delta_base > 0 and nu >= 1 (both finite).
  void validate() const;
  double at_depth(std::size_t depth) const;
};

struct ChildScore {
  NodeId child;
  double score = 0.0;
};

/// eta over the children of one node for one target item. Children not
/// listed have probability 0.
struct GuidanceDistribution {
  std::vector<NodeId> children;
  std::vector<double> probs;

  /// Throws InputError when `child` is not listed.
  double prob_of(NodeId child) const;
};

/// Softmax of scores / delta_t, evaluated with max-subtraction. Throws
/// InputError for an empty child list and NumericError for a non-finite
/// score.
GuidanceDistribution guidance(const TemperatureSchedule& schedule, std::size_t depth,
                              std::span<const ChildScore> scores);

/// S(x, c) for every (item, node) pair of one hierarchy/catalogue pairing.
/// Built-in kinds use per-node aggregates computed once at construction
/// (unit-vector sums or centroids), so a query costs O(dimension). Custom
/// kinds receive the node's cluster as a contiguous span. Read-only after
/// construction; safe to share across threads.
class ClusterScorer {
 public:
  /// Throws InputError naming the first item that is in one collection but
  /// not the other.
  ClusterScorer(const Hierarchy& hierarchy, const Catalogue& catalogue, SimilarityKind kind);

  /// Score of the item at hierarchy position `item_position` against node `c`.
  double score(std::size_t item_position, NodeId c) const;

  /// Catalogue index of a hierarchy item position.
  std::size_t catalogue_index(std::size_t item_position) const { return to_catalogue_[item_position]; }

  const SimilarityKind& kind() const { return kind_; }

 private:
  double average_cosine(std::size_t item_position, NodeId c) const;
  double inverse_squared_euclid(std::size_t item_position, NodeId c) const;

  const Hierarchy* hierarchy_;
  const Catalogue* catalogue_;
  SimilarityKind kind_;
  std::vector<std::size_t> to_catalogue_;
  // Per node: sum of member unit vectors (cosine) or of member vectors
  // (euclid). Sparse when every catalogue vector is sparse.
  std::vector<ItemVector> aggregate_;
  // Per item position, cosine only: v / ||v||, or the zero vector.
  std::vector<ItemVector> unit_;
};

}  // namespace hqs
