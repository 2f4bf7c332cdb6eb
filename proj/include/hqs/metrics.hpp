// Copyright 2026 The HQS Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <chrono>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "hqs/hierarchy.hpp"
#include "hqs/planner.hpp"

namespace hqs {

struct EvalOptions {
  /// Worker threads; 0 means std::thread::hardware_concurrency().
  std::size_t workers = 0;
};

struct ItemOutcome {
  std::string id;
  double value = 0.0;
  std::size_t stop_depth = 0;
  NodeId stop_node;
  double belief_at_stop = 1.0;
  std::vector<NodeId> path;
};

struct HqsReport {
  double hqs = 0.0;
  std::size_t n_items_total = 0;
  std::size_t n_items_evaluated = 0;
  double sample_fraction = 1.0;
  std::optional<std::uint64_t> seed;
  std::chrono::duration<double, std::milli> wall_time{0};
  std::vector<ItemOutcome> per_item;  ///< ascending item id
};

/// Mean oracle value over every item. Items are evaluated concurrently but
/// summed in ascending id order, so the result does not depend on `workers`.
HqsReport hqs(const SearchContext& ctx, const EvalOptions& options = {});

/// HQS over round(fraction * N) items (at least 1) drawn uniformly without
/// replacement. fraction == 1 reproduces hqs() exactly. Throws InputError
/// unless 0 < fraction <= 1.
HqsReport sampled_hqs(const SearchContext& ctx, double fraction, std::uint64_t seed,
                      const EvalOptions& options = {});

/// round-to-nearest(fraction * n), at least 1.
std::size_t sample_size(double fraction, std::size_t n);

/// Deterministic sample of `k` distinct indices from [0, n), ascending. The
/// draw is a partial Fisher-Yates shuffle driven by mt19937_64 with
/// rejection-sampled bounded integers, so it is identical on every platform.
std::vector<std::size_t> sample_without_replacement(std::size_t n, std::size_t k, std::uint64_t seed);

struct HaiResult {
  double hai = 1.0;
  std::size_t n = 0;
};

/// Hierarchical Agreement Index against a ground-truth hierarchy over the same
/// items. d(x, y) = |lowest common ancestor| / N, or 0 when that ancestor is
/// a leaf. Throws InputError on an item-set mismatch.
HaiResult hai(const Hierarchy& h, const Hierarchy& ground_truth);

}  // namespace hqs
