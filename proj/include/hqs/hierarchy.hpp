// Copyright 2026 The HQS Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace hqs {

/// Dense node index assigned in document pre-order; the root is always 0.
struct NodeId {
  std::uint32_t index = 0;

  friend constexpr bool operator==(NodeId, NodeId) = default;
  friend constexpr auto operator<=>(NodeId, NodeId) = default;
};

inline constexpr NodeId kRootNode{0};

/// Nested, unvalidated description of a tree. Exactly one of `children` and
/// `items` is expected to be non-empty; Hierarchy::from_spec enforces it.
struct NodeSpec {
  std::string id;
  std::vector<NodeSpec> children;
  std::vector<std::string> items;
};

/// Immutable rooted tree over a catalogue of items. Items live on leaves only;
/// the cluster of an internal node is the union of its leaves. Because nodes
/// are numbered in pre-order, every cluster is a contiguous range of items().
class Hierarchy {
 public:
  /// Validates the partition invariants and assigns pre-order indices.
  /// Throws InputError naming the offending node or item.
  static Hierarchy from_spec(const NodeSpec& root);

  std::size_t node_count() const { return nodes_.size(); }
  std::size_t n_items() const { return items_.size(); }
  NodeId root() const { return kRootNode; }

  const std::string& label(NodeId c) const { return node(c).label; }
  std::optional<NodeId> parent(NodeId c) const;
  std::span<const NodeId> children(NodeId c) const { return node(c).children; }
  bool is_leaf(NodeId c) const { return node(c).children.empty(); }
  std::size_t depth(NodeId c) const { return node(c).depth; }
  std::size_t cluster_size(NodeId c) const { return node(c).item_end - node(c).item_begin; }

  /// All items in leaf pre-order. An item's position in this list is its
  /// "item position", used as a compact key throughout the library.
  std::span<const std::string> items() const { return items_; }

  /// Items of the subtree rooted at `c`.
  std::span<const std::string> cluster_items(NodeId c) const;

  /// Half-open range of item positions covered by `c`.
  std::pair<std::size_t, std::size_t> item_range(NodeId c) const {
    return {node(c).item_begin, node(c).item_end};
  }

  bool contains(NodeId c, std::size_t item_position) const {
    return item_position >= node(c).item_begin && item_position < node(c).item_end;
  }

  std::optional<std::size_t> find_item(std::string_view item) const;
  /// Throws InputError when the item is not in the hierarchy.
  std::size_t item_position(std::string_view item) const;
  NodeId leaf_of(std::size_t item_position) const { return leaf_of_item_.at(item_position); }

  /// Root-to-leaf sequence of nodes whose clusters contain `item`.
  std::vector<NodeId> path_to_item(std::string_view item) const;
  std::vector<NodeId> path_to_item(std::size_t item_position) const;

  /// Rebuilds a nested description, children in index order.
  NodeSpec to_spec() const;

 private:
  struct Node {
    std::string label;
    std::optional<NodeId> parent;
    std::vector<NodeId> children;
    std::uint32_t depth = 0;
    std::size_t item_begin = 0;
    std::size_t item_end = 0;
  };

  const Node& node(NodeId c) const;

  std::vector<Node> nodes_;
  std::vector<std::string> items_;
  std::vector<NodeId> leaf_of_item_;
  std::map<std::string, std::size_t, std::less<>> item_index_;
};

using WarningSink = std::function<void(const std::string&)>;

/// Parses the hierarchy JSON format:
///   {"id": string, "children": [node...]}  or  {"id": string, "items": [string...]}
/// Unknown keys are reported through `warn` (stderr when empty) and ignored.
Hierarchy parse_hierarchy(std::string_view document, const WarningSink& warn = {});
Hierarchy load_hierarchy(const std::filesystem::path& path, const WarningSink& warn = {});

std::string serialize_hierarchy(const Hierarchy& h, int indent = -1);

}  // namespace hqs
