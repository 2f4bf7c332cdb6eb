// Copyright 2026 The HQS Authors
// SPDX-License-Identifier: Apache-2.0

#include "hqs/metrics.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <limits>
#include <mutex>
#include <numeric>
#include <random>
#include <thread>

#include "hqs/error.hpp"

namespace hqs {

namespace {

using Clock = std::chrono::steady_clock;

/// Positions of all items sorted by id: the fixed reduction order.
std::vector<std::size_t> positions_by_id(const Hierarchy& h) {
  std::vector<std::size_t> order(h.n_items());
  std::iota(order.begin(), order.end(), std::size_t{0});
  auto items = h.items();
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return items[a] < items[b]; });
  return order;
}

ItemOutcome summarize(SearchTrace trace) {
  ItemOutcome out;
  out.id = std::move(trace.item);
  out.value = trace.oracle_value;
  out.stop_depth = trace.stop_depth;
  out.stop_node = trace.stop_node();
  out.belief_at_stop = trace.belief_at_stop;
  out.path = std::move(trace.path);
  return out;
}

/// Evaluates every listed position into a slot of the same rank.
std::vector<ItemOutcome> evaluate(const SearchContext& ctx, const std::vector<std::size_t>& positions,
                                  std::size_t workers) {
  std::vector<ItemOutcome> results(positions.size());
  if (workers == 0) workers = std::max(1u, std::thread::hardware_concurrency());
  workers = std::min(workers, std::max<std::size_t>(positions.size(), 1));

  if (workers == 1) {
    for (std::size_t i = 0; i < positions.size(); ++i) {
      results[i] = summarize(run_simplified_rtbss(ctx, positions[i]));
    }
    return results;
  }

  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto work = [&] {
    for (std::size_t i = next++; i < positions.size(); i = next++) {
      try {
        results[i] = summarize(run_simplified_rtbss(ctx, positions[i]));
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next = positions.size();
      }
    }
  };
  {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(work);
  }
  if (failure) std::rethrow_exception(failure);
  return results;
}

HqsReport assemble(const SearchContext& ctx, const std::vector<std::size_t>& positions,
                   const EvalOptions& options) {
  const auto start = Clock::now();
  HqsReport report;
  report.n_items_total = ctx.n_items();
  report.n_items_evaluated = positions.size();
  report.per_item = evaluate(ctx, positions, options.workers);

  double sum = 0.0;
  for (const auto& item : report.per_item) sum += item.value;
  report.hqs = sum / static_cast<double>(report.per_item.size());
  if (!std::isfinite(report.hqs)) throw NumericError("hqs: non-finite aggregate");
  report.wall_time = Clock::now() - start;
  return report;
}

/// Unbiased integer in [0, bound) by rejection; bound > 0.
std::uint64_t bounded(std::mt19937_64& rng, std::uint64_t bound) {
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                              std::numeric_limits<std::uint64_t>::max() % bound;
  std::uint64_t draw;
  do {
    draw = rng();
  } while (draw >= limit);
  return draw % bound;
}

}  // namespace

HqsReport hqs(const SearchContext& ctx, const EvalOptions& options) {
  HqsReport report = assemble(ctx, positions_by_id(ctx.hierarchy()), options);
  report.sample_fraction = 1.0;
  return report;
}

std::size_t sample_size(double fraction, std::size_t n) {
  if (!(fraction > 0.0 && fraction <= 1.0)) throw InputError("sample fraction must lie in (0, 1]");
  const auto k = static_cast<std::size_t>(std::llround(fraction * static_cast<double>(n)));
  return std::clamp<std::size_t>(k, 1, std::max<std::size_t>(n, 1));
}

std::vector<std::size_t> sample_without_replacement(std::size_t n, std::size_t k, std::uint64_t seed) {
  if (k > n) throw InputError("sample larger than population");
  std::vector<std::size_t> pool(n);
  std::iota(pool.begin(), pool.end(), std::size_t{0});
  std::mt19937_64 rng(seed);
  for (std::size_t i = 0; i < k; ++i) {
    const std::size_t j = i + static_cast<std::size_t>(bounded(rng, n - i));
    std::swap(pool[i], pool[j]);
  }
  pool.resize(k);
  std::sort(pool.begin(), pool.end());
  return pool;
}

HqsReport sampled_hqs(const SearchContext& ctx, double fraction, std::uint64_t seed,
                      const EvalOptions& options) {
  const std::size_t n = ctx.n_items();
  const std::size_t k = sample_size(fraction, n);
  const std::vector<std::size_t> ranked = positions_by_id(ctx.hierarchy());

  std::vector<std::size_t> positions;
  if (k == n) {
    positions = ranked;
  } else {
    positions.reserve(k);
    for (std::size_t rank : sample_without_replacement(n, k, seed)) positions.push_back(ranked[rank]);
  }
  HqsReport report = assemble(ctx, positions, options);
  report.sample_fraction = fraction;
  report.seed = seed;
  return report;
}

// ---------------------------------------------------------------------------
// HAI

namespace {

/// Fills row[y] with the integer size of the lowest common ancestor of the
/// item at `x` and every item y (0 where that ancestor is a leaf), indexed by
/// item position in `h`.
void lca_sizes(const Hierarchy& h, std::size_t x, std::vector<std::uint64_t>& row) {
  std::fill(row.begin(), row.end(), 0);
  NodeId below = h.leaf_of(x);
  std::optional<NodeId> at = h.parent(below);
  while (at) {
    const auto size = static_cast<std::uint64_t>(h.cluster_size(*at));
    auto [begin, end] = h.item_range(*at);
    auto [skip_begin, skip_end] = h.item_range(below);
    for (std::size_t y = begin; y < skip_begin; ++y) row[y] = size;
    for (std::size_t y = skip_end; y < end; ++y) row[y] = size;
    below = *at;
    at = h.parent(*at);
  }
}

}  // namespace

HaiResult hai(const Hierarchy& h, const Hierarchy& ground_truth) {
  const std::size_t n = h.n_items();
  if (ground_truth.n_items() != n) throw InputError("hai: hierarchies cover different numbers of items");

  // Canonical order: ascending id. Map each rank to a position in both trees.
  std::vector<std::size_t> in_h = positions_by_id(h);
  std::vector<std::size_t> in_gt(n);
  for (std::size_t r = 0; r < n; ++r) {
    auto pos = ground_truth.find_item(h.items()[in_h[r]]);
    if (!pos) {
      throw InputError("hai: item \"" + h.items()[in_h[r]] + "\" is missing from the ground-truth hierarchy");
    }
    in_gt[r] = *pos;
  }

  // Sum of |size_h - size_gt| over all ordered pairs, exactly, in integers.
  std::vector<std::uint64_t> row_h(n);
  std::vector<std::uint64_t> row_gt(n);
  std::uint64_t total = 0;
  for (std::size_t r = 0; r < n; ++r) {
    lca_sizes(h, in_h[r], row_h);
    lca_sizes(ground_truth, in_gt[r], row_gt);
    for (std::size_t s = 0; s < n; ++s) {
      const std::uint64_t a = row_h[in_h[s]];
      const std::uint64_t b = row_gt[in_gt[s]];
      total += a > b ? a - b : b - a;
    }
  }
  const double nn = static_cast<double>(n);
  return {1.0 - static_cast<double>(total) / (nn * nn * nn), n};
}

}  // namespace hqs
