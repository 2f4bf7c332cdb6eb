// Copyright 2026 The HQS Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "hqs/corpus.hpp"
#include "hqs/guidance.hpp"
#include "hqs/hierarchy.hpp"
#include "hqs/pomdp.hpp"

namespace hqs {

/// Everything a search for one target needs, shared read-only by all
/// targets: the hierarchy, the catalogue, the guidance configuration and the
/// precomputed cluster scorer. The hierarchy and catalogue must outlive it.
class SearchContext {
 public:
  /// Throws InputError if the item sets differ or the schedule is invalid.
  SearchContext(const Hierarchy& hierarchy, const Catalogue& catalogue, PomdpConfig config);

  const Hierarchy& hierarchy() const { return *hierarchy_; }
  const Catalogue& catalogue() const { return *catalogue_; }
  const PomdpConfig& config() const { return config_; }
  std::size_t n_items() const { return hierarchy_->n_items(); }

  /// eta(c, ., x) over the children of `node` for the target at
  /// `item_position`, at the temperature for the node's depth. Throws
  /// NumericError if a similarity is not finite.
  GuidanceDistribution guidance_at(NodeId node, std::size_t item_position) const;

 private:
  const Hierarchy* hierarchy_;
  const Catalogue* catalogue_;
  PomdpConfig config_;
  ClusterScorer scorer_;
};

/// One decision point on the correct path.
struct SearchStep {
  std::size_t depth = 0;
  NodeId node;
  double belief = 1.0;
  double q_stay = 0.0;
  std::optional<double> q_go_hat;  ///< absent at leaves
  Action action = Action::search;
};

struct SearchTrace {
  std::string item;
  std::vector<NodeId> path;  ///< c_0 .. c_T, always on the correct path
  std::vector<SearchStep> steps;
  std::size_t stop_depth = 0;
  double belief_at_stop = 1.0;  ///< product of eta along the descended edges
  double oracle_value = 0.0;

  NodeId stop_node() const { return path.back(); }
};

/// V_x = (r(c_T) + 1) * belief - 1
double oracle_value(double path_belief, std::size_t cluster_size, std::size_t n_items);

/// Greedy two-lookahead policy followed along the target's correct path:
/// descend while Q^(b, descend) >= Q(b, search) and the node has children.
/// Ties descend. Throws InputError if the item is absent.
SearchTrace run_simplified_rtbss(const SearchContext& ctx, std::string_view item);
SearchTrace run_simplified_rtbss(const SearchContext& ctx, std::size_t item_position);

struct ExpandResult {
  double lower_bound = 0.0;
  Action best = Action::search;
};

/// Depth-limited lower bound on the belief value, exploring every child.
/// `lookahead` counts actions: searching takes one, so a descent is only
/// evaluated when at least two remain (the descent and what follows it).
/// With lookahead <= 1, or at a leaf, the result is (Q(b, search), search).
/// Ties between the two actions go to descend, matching the planner.
ExpandResult expand(const SearchContext& ctx, std::size_t item_position, const Belief& belief,
                    unsigned lookahead);

}  // namespace hqs
