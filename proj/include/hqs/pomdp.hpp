// Copyright 2026 The HQS Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <variant>

#include "hqs/guidance.hpp"
#include "hqs/hierarchy.hpp"

namespace hqs {

/// Rewards are undiscounted. Not configurable: the value derivations used by
/// the planner assume it.
inline constexpr double kDiscount = 1.0;

enum class Action { descend, search };

/// Physical location plus whether the target lies in that location's
/// cluster. An empty location is the terminal state reached by searching.
struct SearchState {
  std::optional<NodeId> location;
  bool on_path = false;

  bool terminal() const { return !location.has_value(); }
};

enum class SearchOutcome { not_found, found };

/// After descending the bot observes the node it arrived at; after searching,
/// whether the target was found.
using Observation = std::variant<NodeId, SearchOutcome>;

/// Z(s', a, o): the node observation identifies the arrival node exactly,
/// and the search outcome reveals the terminal flag.
double observation_probability(const SearchState& reached, Action action, const Observation& o);

/// Belief collapsed onto one node: b is the probability of <node, on path>;
/// 1 - b is the probability of <node, off path>; every other state has 0.
struct Belief {
  NodeId node = kRootNode;
  double b = 1.0;
};

struct PomdpConfig {
  TemperatureSchedule schedule;
  SimilarityKind similarity = AverageCosineExcludingSelf{};
};

/// r(c) = 1 - (e^{|c|/N} - 1) / (e - 1). Throws InputError unless
/// 1 <= cluster_size <= n_items.
double reward(std::size_t cluster_size, std::size_t n_items);

/// Probabilities of moving into one child c' under descend, given the
/// guidance probability eta = eta(c, c').
struct TransitionProbs {
  double on_to_on = 0.0;    ///< p(<c',1> | <c,1>) = eta^2
  double on_to_off = 0.0;   ///< p(<c',0> | <c,1>) = eta (1 - eta)
  double off_to_on = 0.0;   ///< p(<c',1> | <c,0>) = 0
  double off_to_off = 0.0;  ///< p(<c',0> | <c,0>) = eta
};

TransitionProbs transition_probs(double eta);

/// Bayes update after descending into `child` and observing it. The
/// normaliser p(o = child | b, descend) equals eta, so b' = eta * b.
Belief belief_update(const Belief& belief, double eta_to_child, NodeId child);

/// Probability of observing `child` after descending: eta itself.
double observation_likelihood(double eta_to_child);

/// Q(b, search) = b (r(c) + 1) - 1
double q_stay(const Belief& belief, std::size_t cluster_size, std::size_t n_items);

struct ChildOutlook {
  NodeId node;
  double eta = 0.0;
  std::size_t cluster_size = 0;
};

/// One-step lookahead for descending: sum over children of
/// eta * Q(eta * b, search at child), treating each child as a leaf.
/// Throws InputError on an empty child list or if the etas do not sum to 1.
double q_go_hat(const Belief& belief, std::span<const ChildOutlook> children, std::size_t n_items);

}  // namespace hqs
