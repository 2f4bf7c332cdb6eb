// Copyright 2026 The HQS Authors
// SPDX-License-Identifier: Apache-2.0

#include "hqs/planner.hpp"

#include <cmath>

#include "hqs/error.hpp"

namespace hqs {

SearchContext::SearchContext(const Hierarchy& hierarchy, const Catalogue& catalogue, PomdpConfig config)
    : hierarchy_(&hierarchy),
      catalogue_(&catalogue),
      config_(std::move(config)),
      scorer_(hierarchy, catalogue, config_.similarity) {
  config_.schedule.validate();
}

GuidanceDistribution SearchContext::guidance_at(NodeId node, std::size_t item_position) const {
  auto children = hierarchy_->children(node);
  std::vector<ChildScore> scores;
  scores.reserve(children.size());
  for (NodeId child : children) {
    const double s = scorer_.score(item_position, child);
    if (!std::isfinite(s)) {
      throw NumericError("similarity of item \"" + hierarchy_->items()[item_position] + "\" to node \"" +
                         hierarchy_->label(child) + "\" is not finite");
    }
    scores.push_back({child, s});
  }
  return guidance(config_.schedule, hierarchy_->depth(node), scores);
}

namespace {

std::vector<ChildOutlook> outlook(const Hierarchy& h, const GuidanceDistribution& eta) {
  std::vector<ChildOutlook> out;
  out.reserve(eta.children.size());
  for (std::size_t i = 0; i < eta.children.size(); ++i) {
    out.push_back({eta.children[i], eta.probs[i], h.cluster_size(eta.children[i])});
  }
  return out;
}

}  // namespace

double oracle_value(double path_belief, std::size_t cluster_size, std::size_t n_items) {
  return (reward(cluster_size, n_items) + 1.0) * path_belief - 1.0;
}

SearchTrace run_simplified_rtbss(const SearchContext& ctx, std::string_view item) {
  return run_simplified_rtbss(ctx, ctx.hierarchy().item_position(item));
}

SearchTrace run_simplified_rtbss(const SearchContext& ctx, std::size_t item_position) {
  const Hierarchy& h = ctx.hierarchy();
  const std::size_t n = ctx.n_items();
  if (item_position >= n) throw InputError("planner: item position out of range");

  // Only the correct path is walked; eta is evaluated at the visited nodes only.
  const std::vector<NodeId> correct = h.path_to_item(item_position);

  SearchTrace trace;
  trace.item = h.items()[item_position];
  Belief belief{h.root(), 1.0};
  for (std::size_t t = 0;; ++t) {
    const NodeId c = correct[t];
    trace.path.push_back(c);

    SearchStep step;
    step.depth = t;
    step.node = c;
    step.belief = belief.b;
    step.q_stay = q_stay(belief, h.cluster_size(c), n);

    if (h.is_leaf(c)) {
      step.action = Action::search;
      trace.steps.push_back(step);
      break;
    }
    const GuidanceDistribution eta = ctx.guidance_at(c, item_position);
    step.q_go_hat = q_go_hat(belief, outlook(h, eta), n);
    step.action = *step.q_go_hat >= step.q_stay ? Action::descend : Action::search;
    trace.steps.push_back(step);
    if (step.action == Action::search) break;

    const NodeId next = correct[t + 1];
    belief = belief_update(belief, eta.prob_of(next), next);
  }

  trace.stop_depth = trace.path.size() - 1;
  trace.belief_at_stop = belief.b;
  trace.oracle_value = oracle_value(belief.b, h.cluster_size(trace.stop_node()), n);
  return trace;
}

ExpandResult expand(const SearchContext& ctx, std::size_t item_position, const Belief& belief,
                    unsigned lookahead) {
  const Hierarchy& h = ctx.hierarchy();
  const double stay = q_stay(belief, h.cluster_size(belief.node), ctx.n_items());
  if (lookahead <= 1 || h.is_leaf(belief.node)) return {stay, Action::search};

  // R(b, descend) = 0; the descent value is the eta-weighted bound below.
  const GuidanceDistribution eta = ctx.guidance_at(belief.node, item_position);
  double descend = 0.0;
  for (std::size_t i = 0; i < eta.children.size(); ++i) {
    const Belief next = belief_update(belief, eta.probs[i], eta.children[i]);
    descend += kDiscount * observation_likelihood(eta.probs[i]) *
               expand(ctx, item_position, next, lookahead - 1).lower_bound;
  }
  if (descend >= stay) return {descend, Action::descend};
  return {stay, Action::search};
}

}  // namespace hqs
