// Copyright 2026 The HQS Authors
// SPDX-License-Identifier: Apache-2.0

#include "hqs/report.hpp"

#include <charconv>
#include <sstream>

namespace hqs {

namespace {

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  out += '"';
  return out;
}

}  // namespace

std::string format_double(double v) {
  char buf[32];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, end);
}

nlohmann::ordered_json report_to_json(const HqsReport& report, const Hierarchy& h, const ReportOptions& options) {
  nlohmann::ordered_json out = nlohmann::ordered_json::object();
  out["hqs"] = report.hqs;
  out["n_items_total"] = report.n_items_total;
  out["n_items_evaluated"] = report.n_items_evaluated;
  out["sample_fraction"] = report.sample_fraction;
  out["seed"] = report.seed ? nlohmann::ordered_json(*report.seed) : nlohmann::ordered_json(nullptr);
  out["wall_time_ms"] = options.reproducible ? 0.0 : report.wall_time.count();

  nlohmann::ordered_json items = nlohmann::ordered_json::array();
  if (options.include_per_item) {
    for (const auto& item : report.per_item) {
      nlohmann::ordered_json path = nlohmann::ordered_json::array();
      for (NodeId c : item.path) path.push_back(h.label(c));
      items.push_back({{"id", item.id},
                       {"value", item.value},
                       {"stop_depth", item.stop_depth},
                       {"stop_node", h.label(item.stop_node)},
                       {"belief_at_stop", item.belief_at_stop},
                       {"path", std::move(path)}});
    }
  }
  out["per_item"] = std::move(items);
  return out;
}

std::string report_to_csv(const HqsReport& report, const Hierarchy& h) {
  std::ostringstream out;
  out << "id,value,stop_depth,stop_node,belief_at_stop\n";
  for (const auto& item : report.per_item) {
    out << csv_field(item.id) << ',' << format_double(item.value) << ',' << item.stop_depth << ','
        << csv_field(h.label(item.stop_node)) << ',' << format_double(item.belief_at_stop) << '\n';
  }
  return out.str();
}

}  // namespace hqs
