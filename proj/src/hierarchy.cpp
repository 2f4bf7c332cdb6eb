// Copyright 2026 The HQS Authors
// SPDX-License-Identifier: Apache-2.0

#include "hqs/hierarchy.hpp"

#include <fstream>
#include <iostream>
#include <limits>
#include <sstream>
#include <utility>

#include <nlohmann/json.hpp>

#include "hqs/error.hpp"

namespace hqs {

namespace {

using nlohmann::json;

std::string describe(const std::string& id) { return "node \"" + id + "\""; }

NodeSpec spec_from_json(const json& j, const WarningSink& warn) {
  // Iterative walk: machine-built trees can be thousands of levels deep.
  NodeSpec root;
  std::vector<std::pair<const json*, NodeSpec*>> stack{{&j, &root}};
  while (!stack.empty()) {
    auto [doc, out] = stack.back();
    stack.pop_back();

    if (!doc->is_object()) {
      throw InputError("hierarchy: expected a node object, got " + std::string(doc->type_name()));
    }
    auto id = doc->find("id");
    if (id == doc->end() || !id->is_string()) {
      throw InputError("hierarchy: node without a string \"id\"");
    }
    out->id = id->get<std::string>();

    for (const auto& [key, value] : doc->items()) {
      if (key != "id" && key != "children" && key != "items") {
        warn("hierarchy: ignoring unknown key \"" + key + "\" on " + describe(out->id));
      }
    }

    auto children = doc->find("children");
    auto items = doc->find("items");
    if (children != doc->end() && items != doc->end()) {
      throw InputError("hierarchy: " + describe(out->id) + " has both \"children\" and \"items\"");
    }
    if (children == doc->end() && items == doc->end()) {
      throw InputError("hierarchy: " + describe(out->id) + " has neither \"children\" nor \"items\"");
    }
    if (items != doc->end()) {
      if (!items->is_array()) {
        throw InputError("hierarchy: \"items\" of " + describe(out->id) + " is not an array");
      }
      if (items->empty()) {
        throw InputError("hierarchy: empty leaf " + describe(out->id));
      }
      for (const auto& item : *items) {
        if (!item.is_string()) {
          throw InputError("hierarchy: non-string item under " + describe(out->id));
        }
        out->items.push_back(item.get<std::string>());
      }
      continue;
    }
    if (!children->is_array()) {
      throw InputError("hierarchy: \"children\" of " + describe(out->id) + " is not an array");
    }
    if (children->empty()) {
      throw InputError("hierarchy: internal " + describe(out->id) + " has zero children");
    }
    out->children.resize(children->size());
    for (std::size_t i = 0; i < children->size(); ++i) {
      stack.emplace_back(&(*children)[i], &out->children[i]);
    }
  }
  return root;
}

json spec_to_json(const NodeSpec& root) {
  json out;
  std::vector<std::pair<const NodeSpec*, json*>> stack{{&root, &out}};
  while (!stack.empty()) {
    auto [spec, j] = stack.back();
    stack.pop_back();
    *j = json::object();
    (*j)["id"] = spec->id;
    if (spec->children.empty()) {
      (*j)["items"] = spec->items;
      continue;
    }
    json& kids = (*j)["children"];
    kids = json::array();
    for (std::size_t i = 0; i < spec->children.size(); ++i) kids.push_back(json::object());
    for (std::size_t i = 0; i < spec->children.size(); ++i) {
      stack.emplace_back(&spec->children[i], &kids[i]);
    }
  }
  return out;
}

}  // namespace

Hierarchy Hierarchy::from_spec(const NodeSpec& root) {
  Hierarchy h;

  struct Pending {
    const NodeSpec* spec;
    std::optional<NodeId> parent;
    std::uint32_t depth;
  };
  std::vector<Pending> stack{{&root, std::nullopt, 0}};
  while (!stack.empty()) {
    Pending p = stack.back();
    stack.pop_back();
    const NodeSpec& spec = *p.spec;

    if (h.nodes_.size() >= std::numeric_limits<std::uint32_t>::max()) {
      throw InputError("hierarchy: too many nodes");
    }
    NodeId id{static_cast<std::uint32_t>(h.nodes_.size())};
    Node node;
    node.label = spec.id;
    node.parent = p.parent;
    node.depth = p.depth;
    if (p.parent) h.nodes_[p.parent->index].children.push_back(id);

    if (!spec.children.empty() && !spec.items.empty()) {
      throw InputError("hierarchy: item \"" + spec.items.front() + "\" listed on internal " +
                       describe(spec.id));
    }
    if (spec.children.empty()) {
      if (spec.items.empty()) throw InputError("hierarchy: empty leaf " + describe(spec.id));
      node.item_begin = h.items_.size();
      for (const auto& item : spec.items) {
        if (item.empty()) throw InputError("hierarchy: empty item id under " + describe(spec.id));
        auto [it, inserted] = h.item_index_.emplace(item, h.items_.size());
        if (!inserted) {
          throw InputError("hierarchy: duplicate item \"" + item + "\" (again under " +
                           describe(spec.id) + ")");
        }
        h.items_.push_back(item);
        h.leaf_of_item_.push_back(id);
      }
      node.item_end = h.items_.size();
    }
    h.nodes_.push_back(std::move(node));

    for (auto child = spec.children.rbegin(); child != spec.children.rend(); ++child) {
      stack.push_back({&*child, id, p.depth + 1});
    }
  }

  // Pre-order: children have larger indices than their parent, so a reverse
  // sweep sees every child range before the parent needs it.
  for (std::size_t i = h.nodes_.size(); i-- > 0;) {
    Node& n = h.nodes_[i];
    if (n.children.empty()) continue;
    n.item_begin = h.nodes_[n.children.front().index].item_begin;
    n.item_end = h.nodes_[n.children.back().index].item_end;
  }
  return h;
}

const Hierarchy::Node& Hierarchy::node(NodeId c) const {
  if (c.index >= nodes_.size()) {
    throw InputError("hierarchy: unknown node index " + std::to_string(c.index));
  }
  return nodes_[c.index];
}

std::optional<NodeId> Hierarchy::parent(NodeId c) const { return node(c).parent; }

std::span<const std::string> Hierarchy::cluster_items(NodeId c) const {
  const Node& n = node(c);
  return std::span<const std::string>(items_).subspan(n.item_begin, n.item_end - n.item_begin);
}

std::optional<std::size_t> Hierarchy::find_item(std::string_view item) const {
  auto it = item_index_.find(item);
  if (it == item_index_.end()) return std::nullopt;
  return it->second;
}

std::size_t Hierarchy::item_position(std::string_view item) const {
  auto pos = find_item(item);
  if (!pos) throw InputError("hierarchy: item \"" + std::string(item) + "\" is not in the hierarchy");
  return *pos;
}

std::vector<NodeId> Hierarchy::path_to_item(std::string_view item) const {
  return path_to_item(item_position(item));
}

std::vector<NodeId> Hierarchy::path_to_item(std::size_t item_position) const {
  std::vector<NodeId> path;
  std::optional<NodeId> at = leaf_of(item_position);
  while (at) {
    path.push_back(*at);
    at = nodes_[at->index].parent;
  }
  return {path.rbegin(), path.rend()};
}

NodeSpec Hierarchy::to_spec() const {
  std::vector<NodeSpec> built(nodes_.size());
  for (std::size_t i = nodes_.size(); i-- > 0;) {
    const Node& n = nodes_[i];
    NodeSpec& spec = built[i];
    spec.id = n.label;
    if (n.children.empty()) {
      spec.items.assign(items_.begin() + static_cast<std::ptrdiff_t>(n.item_begin),
                        items_.begin() + static_cast<std::ptrdiff_t>(n.item_end));
    }
    for (NodeId child : n.children) spec.children.push_back(std::move(built[child.index]));
  }
  return std::move(built.front());
}

Hierarchy parse_hierarchy(std::string_view document, const WarningSink& warn) {
  WarningSink sink = warn ? warn : [](const std::string& msg) { std::cerr << "warning: " << msg << '\n'; };
  json doc;
  try {
    doc = json::parse(document.begin(), document.end());
  } catch (const json::parse_error& e) {
    throw InputError(std::string("hierarchy: malformed JSON: ") + e.what());
  }
  return Hierarchy::from_spec(spec_from_json(doc, sink));
}

Hierarchy load_hierarchy(const std::filesystem::path& path, const WarningSink& warn) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open hierarchy file " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_hierarchy(buf.str(), warn);
}

std::string serialize_hierarchy(const Hierarchy& h, int indent) {
  return spec_to_json(h.to_spec()).dump(indent);
}

}  // namespace hqs
