// Copyright 2026 The HQS Authors
// SPDX-License-Identifier: Apache-2.0

#include "hqs/pomdp.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "hqs/error.hpp"

namespace hqs {

double observation_probability(const SearchState& reached, Action action, const Observation& o) {
  if (action == Action::descend) {
    const NodeId* at = std::get_if<NodeId>(&o);
    return at && reached.location && *reached.location == *at ? 1.0 : 0.0;
  }
  const SearchOutcome* outcome = std::get_if<SearchOutcome>(&o);
  if (!outcome || !reached.terminal()) return 0.0;
  return (*outcome == SearchOutcome::found) == reached.on_path ? 1.0 : 0.0;
}

double reward(std::size_t cluster_size, std::size_t n_items) {
  if (cluster_size == 0 || cluster_size > n_items) {
    throw InputError("reward: cluster size " + std::to_string(cluster_size) + " outside [1, " +
                     std::to_string(n_items) + "]");
  }
  const double fraction = static_cast<double>(cluster_size) / static_cast<double>(n_items);
  if (cluster_size == n_items) return 0.0;
  return 1.0 - std::expm1(fraction) / (std::numbers::e - 1.0);
}

TransitionProbs transition_probs(double eta) {
  if (!(eta >= 0.0 && eta <= 1.0)) throw InputError("transition: eta outside [0, 1]");
  return {eta * eta, eta * (1.0 - eta), 0.0, eta};
}

Belief belief_update(const Belief& belief, double eta_to_child, NodeId child) {
  return {child, eta_to_child * belief.b};
}

double observation_likelihood(double eta_to_child) {
  // eta [ (1 - eta b) + eta b ] collapses to eta.
  return eta_to_child;
}

double q_stay(const Belief& belief, std::size_t cluster_size, std::size_t n_items) {
  return belief.b * (reward(cluster_size, n_items) + 1.0) - 1.0;
}

double q_go_hat(const Belief& belief, std::span<const ChildOutlook> children, std::size_t n_items) {
  if (children.empty()) throw InputError("q_go_hat: no children");
  double mass = 0.0;
  double total = 0.0;
  for (const auto& child : children) {
    mass += child.eta;
    Belief next = belief_update(belief, child.eta, child.node);
    total += observation_likelihood(child.eta) * q_stay(next, child.cluster_size, n_items);
  }
  if (std::abs(mass - 1.0) > 1e-9) throw InputError("q_go_hat: guidance probabilities do not sum to 1");
  return total;
}

}  // namespace hqs
