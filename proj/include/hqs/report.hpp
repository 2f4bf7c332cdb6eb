// Copyright 2026 The HQS Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <string>

#include <nlohmann/json.hpp>

#include "hqs/hierarchy.hpp"
#include "hqs/metrics.hpp"

namespace hqs {

struct ReportOptions {
  bool include_per_item = true;
  /// Write wall_time_ms as 0 so repeated runs produce identical bytes.
  bool reproducible = false;
};

/// {"hqs", "n_items_total", "n_items_evaluated", "sample_fraction", "seed",
///  "wall_time_ms", "per_item": [{"id", "value", "stop_depth", "stop_node",
///  "belief_at_stop", "path"}]}
nlohmann::ordered_json report_to_json(const HqsReport& report, const Hierarchy& h, const ReportOptions& options = {});

/// One row per evaluated item: id,value,stop_depth,stop_node,belief_at_stop.
/// Numbers use the shortest round-trip representation.
std::string report_to_csv(const HqsReport& report, const Hierarchy& h);

/// Shortest decimal string that parses back to the same double.
std::string format_double(double v);

}  // namespace hqs
