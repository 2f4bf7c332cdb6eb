// Copyright 2026 The HQS Authors
// SPDX-License-Identifier: Apache-2.0

#include "hqs/guidance.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "hqs/error.hpp"

namespace hqs {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

ItemVector scaled(const ItemVector& v, double factor) {
  std::vector<double> values(v.values().begin(), v.values().end());
  for (double& x : values) x *= factor;
  if (!v.is_sparse()) return ItemVector::dense(std::move(values));
  return ItemVector::sparse(v.dimension(), {v.indices().begin(), v.indices().end()}, std::move(values));
}

/// Sum of same-dimension vectors; sparse output only if `sparse` is set and
/// every part is sparse.
ItemVector sum_of(std::span<const ItemVector* const> parts, std::size_t dimension, bool sparse) {
  if (!sparse) {
    std::vector<double> acc(dimension, 0.0);
    for (const ItemVector* p : parts) p->add_to(acc);
    return ItemVector::dense(std::move(acc));
  }
  std::vector<std::pair<std::uint32_t, double>> entries;
  for (const ItemVector* p : parts) {
    for (std::size_t k = 0; k < p->indices().size(); ++k) entries.emplace_back(p->indices()[k], p->values()[k]);
  }
  std::stable_sort(entries.begin(), entries.end(),
                   [](const auto& a, const auto& b) { return a.first < b.first; });
  std::vector<std::uint32_t> indices;
  std::vector<double> values;
  for (const auto& [i, v] : entries) {
    if (!indices.empty() && indices.back() == i) {
      values.back() += v;
    } else {
      indices.push_back(i);
      values.push_back(v);
    }
  }
  return ItemVector::sparse(dimension, std::move(indices), std::move(values));
}

/// ||v - factor * agg||^2
double squared_distance_scaled(const ItemVector& v, const ItemVector& agg, double factor) {
  if (!agg.is_sparse()) {
    std::vector<double> center(agg.values().begin(), agg.values().end());
    for (double& x : center) x *= factor;
    return squared_distance(v, center);
  }
  if (!v.is_sparse()) {
    double sum = 0.0;
    auto vals = v.values();
    std::size_t k = 0;
    for (std::size_t i = 0; i < vals.size(); ++i) {
      double c = 0.0;
      if (k < agg.indices().size() && agg.indices()[k] == i) c = factor * agg.values()[k++];
      double d = vals[i] - c;
      sum += d * d;
    }
    return sum;
  }
  auto iv = v.indices();
  auto ia = agg.indices();
  double sum = 0.0;
  std::size_t x = 0;
  std::size_t y = 0;
  while (x < iv.size() || y < ia.size()) {
    double d;
    if (y == ia.size() || (x < iv.size() && iv[x] < ia[y])) {
      d = v.values()[x++];
    } else if (x == iv.size() || ia[y] < iv[x]) {
      d = -factor * agg.values()[y++];
    } else {
      d = v.values()[x++] - factor * agg.values()[y++];
    }
    sum += d * d;
  }
  return sum;
}

ItemVector unit_of(const ItemVector& v) {
  const double norm = std::sqrt(v.squared_norm());
  if (norm == 0.0) return scaled(v, 0.0);
  return scaled(v, 1.0 / norm);
}

}  // namespace

std::string_view similarity_name(const SimilarityKind& kind) {
  return std::visit(Overloaded{
                        [](const AverageCosineExcludingSelf&) { return std::string_view("avg-cosine"); },
                        [](const InverseSquaredEuclideanToCentroid&) { return std::string_view("inv-sq-euclid"); },
                        [](const CustomSimilarity&) { return std::string_view("custom"); },
                    },
                    kind);
}

double cosine(const ItemVector& a, const ItemVector& b) {
  const double na = a.squared_norm();
  const double nb = b.squared_norm();
  if (na == 0.0 || nb == 0.0) return 0.0;
  return a.dot(b) / (std::sqrt(na) * std::sqrt(nb));
}

double similarity(const SimilarityKind& kind, const Catalogue& catalogue, std::size_t x,
                  std::span<const std::size_t> cluster) {
  if (cluster.empty()) throw InputError("similarity: empty cluster");
  if (x >= catalogue.size()) throw InputError("similarity: item index out of range");
  return std::visit(
      Overloaded{
          [&](const AverageCosineExcludingSelf&) {
            if (cluster.size() == 1 && cluster.front() == x) return 1.0;
            double sum = 0.0;
            std::size_t others = 0;
            for (std::size_t y : cluster) {
              if (y == x) continue;
              sum += cosine(catalogue.vector(x), catalogue.vector(y));
              ++others;
            }
            return sum / static_cast<double>(others);
          },
          [&](const InverseSquaredEuclideanToCentroid&) {
            auto center = centroid(catalogue, cluster).to_dense();
            return 1.0 / (squared_distance(catalogue.vector(x), center) +
                          InverseSquaredEuclideanToCentroid::kOffset);
          },
          [&](const CustomSimilarity& fn) { return fn(catalogue, x, cluster); },
      },
      kind);
}

double similarity(const SimilarityKind& kind, const Catalogue& catalogue, std::string_view x,
                  std::span<const std::string> cluster) {
  std::vector<std::size_t> idx;
  idx.reserve(cluster.size());
  for (const auto& id : cluster) idx.push_back(catalogue.index_of(id));
  return similarity(kind, catalogue, catalogue.index_of(x), idx);
}

// ---------------------------------------------------------------------------

void TemperatureSchedule::validate() const {
  if (!std::isfinite(delta_base) || delta_base <= 0.0) {
    throw InputError("temperature: delta must be a positive finite number");
  }
  if (!std::isfinite(nu) || nu < 1.0) throw InputError("temperature: nu must be finite and >= 1");
}

double TemperatureSchedule::at_depth(std::size_t depth) const {
  return delta_base * std::pow(nu, static_cast<double>(depth));
}

double GuidanceDistribution::prob_of(NodeId child) const {
  auto it = std::find(children.begin(), children.end(), child);
  if (it == children.end()) throw InputError("guidance: node is not a child of this decision point");
  return probs[static_cast<std::size_t>(it - children.begin())];
}

GuidanceDistribution guidance(const TemperatureSchedule& schedule, std::size_t depth,
                              std::span<const ChildScore> scores) {
  if (scores.empty()) throw InputError("guidance: node has no children");
  schedule.validate();
  const double temperature = schedule.at_depth(depth);
  if (!std::isfinite(temperature)) throw NumericError("guidance: temperature overflow at depth " + std::to_string(depth));

  double top = -std::numeric_limits<double>::infinity();
  for (const auto& s : scores) {
    if (!std::isfinite(s.score)) {
      throw NumericError("guidance: non-finite similarity for child node " + std::to_string(s.child.index));
    }
    top = std::max(top, s.score);
  }

  GuidanceDistribution out;
  out.children.reserve(scores.size());
  out.probs.reserve(scores.size());
  double total = 0.0;
  for (const auto& s : scores) {
    const double w = std::exp((s.score - top) / temperature);
    out.children.push_back(s.child);
    out.probs.push_back(w);
    total += w;
  }
  for (double& p : out.probs) p /= total;
  return out;
}

// ---------------------------------------------------------------------------

ClusterScorer::ClusterScorer(const Hierarchy& hierarchy, const Catalogue& catalogue, SimilarityKind kind)
    : hierarchy_(&hierarchy), catalogue_(&catalogue), kind_(std::move(kind)) {
  const auto items = hierarchy.items();
  to_catalogue_.reserve(items.size());
  for (const auto& id : items) {
    auto idx = catalogue.find(id);
    if (!idx) throw InputError("item \"" + id + "\" is in the hierarchy but not in the items file");
    to_catalogue_.push_back(*idx);
  }
  if (catalogue.size() != items.size()) {
    for (const auto& id : catalogue.ids()) {
      if (!hierarchy.find_item(id)) {
        throw InputError("item \"" + id + "\" is in the items file but not in the hierarchy");
      }
    }
  }

  const bool cosine_kind = std::holds_alternative<AverageCosineExcludingSelf>(kind_);
  if (!cosine_kind && !std::holds_alternative<InverseSquaredEuclideanToCentroid>(kind_)) return;

  bool all_sparse = true;
  for (std::size_t i = 0; i < catalogue.size(); ++i) all_sparse = all_sparse && catalogue.vector(i).is_sparse();

  if (cosine_kind) {
    unit_.reserve(items.size());
    for (std::size_t pos = 0; pos < items.size(); ++pos) unit_.push_back(unit_of(catalogue.vector(to_catalogue_[pos])));
  }
  auto member = [&](std::size_t pos) -> const ItemVector& {
    return cosine_kind ? unit_[pos] : catalogue.vector(to_catalogue_[pos]);
  };

  aggregate_.resize(hierarchy.node_count());
  std::vector<const ItemVector*> parts;
  for (std::size_t i = hierarchy.node_count(); i-- > 0;) {
    NodeId c{static_cast<std::uint32_t>(i)};
    parts.clear();
    if (hierarchy.is_leaf(c)) {
      auto [begin, end] = hierarchy.item_range(c);
      for (std::size_t pos = begin; pos < end; ++pos) parts.push_back(&member(pos));
    } else {
      for (NodeId child : hierarchy.children(c)) parts.push_back(&aggregate_[child.index]);
    }
    aggregate_[i] = sum_of(parts, catalogue.dimension(), all_sparse);
  }
}

double ClusterScorer::score(std::size_t item_position, NodeId c) const {
  return std::visit(
      Overloaded{
          [&](const AverageCosineExcludingSelf&) { return average_cosine(item_position, c); },
          [&](const InverseSquaredEuclideanToCentroid&) { return inverse_squared_euclid(item_position, c); },
          [&](const CustomSimilarity& fn) {
            auto [begin, end] = hierarchy_->item_range(c);
            std::span<const std::size_t> cluster(to_catalogue_.data() + begin, end - begin);
            return fn(*catalogue_, to_catalogue_[item_position], cluster);
          },
      },
      kind_);
}

double ClusterScorer::average_cosine(std::size_t item_position, NodeId c) const {
  const bool inside = hierarchy_->contains(c, item_position);
  const std::size_t size = hierarchy_->cluster_size(c);
  if (inside && size == 1) return 1.0;
  const ItemVector& u = unit_[item_position];
  double sum = u.dot(aggregate_[c.index]);
  if (inside) sum -= u.squared_norm();
  return sum / static_cast<double>(size - (inside ? 1 : 0));
}

double ClusterScorer::inverse_squared_euclid(std::size_t item_position, NodeId c) const {
  const ItemVector& v = catalogue_->vector(to_catalogue_[item_position]);
  const double inv_size = 1.0 / static_cast<double>(hierarchy_->cluster_size(c));
  return 1.0 / (squared_distance_scaled(v, aggregate_[c.index], inv_size) +
                InverseSquaredEuclideanToCentroid::kOffset);
}

}  // namespace hqs
