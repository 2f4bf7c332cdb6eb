// Copyright 2026 The HQS Authors
// SPDX-License-Identifier: Apache-2.0

#include "cli.hpp"

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "hqs/analysis.hpp"
#include "hqs/corpus.hpp"
#include "hqs/error.hpp"
#include "hqs/hierarchy.hpp"
#include "hqs/metrics.hpp"
#include "hqs/planner.hpp"
#include "hqs/report.hpp"

namespace hqs::cli {

namespace {

struct RunConfig {
  std::string hierarchy_path;
  std::string items_path;
  std::string similarity = "avg-cosine";
  double delta = 0.01;
  double nu = 1.0;
  double sample_fraction = 1.0;
  std::optional<std::uint64_t> seed;
  std::size_t workers = 0;
  std::string out_path;
  std::string format = "json";
  bool summary_only = false;
  bool reproducible = false;
};

std::string fixed6(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  return buf;
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw InputError("cannot write " + path);
  out << content;
  if (!out) throw InputError("failed writing " + path);
}

SimilarityKind similarity_from_flag(const std::string& name) {
  if (name == "avg-cosine") return AverageCosineExcludingSelf{};
  if (name == "inv-sq-euclid") return InverseSquaredEuclideanToCentroid{};
  throw InputError("unknown similarity \"" + name + "\"");
}

int cmd_evaluate(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  WarningSink warn = [&err](const std::string& msg) { err << "warning: " << msg << '\n'; };
  const Hierarchy h = load_hierarchy(cfg.hierarchy_path, warn);
  const Catalogue catalogue = load_items(cfg.items_path);

  PomdpConfig pomdp;
  pomdp.schedule = {cfg.delta, cfg.nu};
  pomdp.similarity = similarity_from_flag(cfg.similarity);
  const SearchContext ctx(h, catalogue, std::move(pomdp));

  const EvalOptions options{cfg.workers};
  const HqsReport report = cfg.sample_fraction == 1.0
                               ? hqs(ctx, options)
                               : sampled_hqs(ctx, cfg.sample_fraction, cfg.seed.value_or(0), options);

  if (!cfg.out_path.empty()) {
    if (cfg.format == "csv") {
      write_file(cfg.out_path, report_to_csv(report, h));
    } else {
      ReportOptions ro;
      ro.include_per_item = !cfg.summary_only;
      ro.reproducible = cfg.reproducible;
      write_file(cfg.out_path, report_to_json(report, h, ro).dump(2) + "\n");
    }
  }
  out << "HQS=" << fixed6(report.hqs) << " over " << report.n_items_evaluated << '/' << report.n_items_total
      << " items\n";
  return kExitOk;
}

int cmd_hai(const std::string& a, const std::string& b, std::ostream& out, std::ostream& err) {
  WarningSink warn = [&err](const std::string& msg) { err << "warning: " << msg << '\n'; };
  const Hierarchy ha = load_hierarchy(a, warn);
  const Hierarchy hb = load_hierarchy(b, warn);
  out << "HAI=" << fixed6(hai(ha, hb).hai) << '\n';
  return kExitOk;
}

int cmd_build_ac(const std::string& items, const std::string& out_path, std::ostream& out) {
  const Catalogue catalogue = load_items(items);
  const Hierarchy h = build_average_link_hierarchy(catalogue);
  write_file(out_path, serialize_hierarchy(h, 2) + "\n");
  out << "wrote " << h.node_count() << " nodes over " << h.n_items() << " items to " << out_path << '\n';
  return kExitOk;
}

std::vector<double> parse_grid(const std::string& spec) {
  std::vector<double> parts;
  std::stringstream ss(spec);
  std::string piece;
  while (std::getline(ss, piece, ':')) {
    try {
      std::size_t used = 0;
      parts.push_back(std::stod(piece, &used));
      if (used != piece.size()) throw std::invalid_argument(piece);
    } catch (const std::exception&) {
      throw InputError("grid: \"" + spec + "\" is not start:stop:step");
    }
  }
  if (parts.size() != 3 || !(parts[2] > 0.0) || parts[1] < parts[0] || parts[0] < 0.0) {
    throw InputError("grid: \"" + spec + "\" must be start:stop:step with 0 <= start <= stop and step > 0");
  }
  const auto count = static_cast<std::size_t>(std::floor((parts[1] - parts[0]) / parts[2] + 1e-9)) + 1;
  std::vector<double> grid;
  grid.reserve(count);
  for (std::size_t i = 0; i < count; ++i) grid.push_back(parts[0] + static_cast<double>(i) * parts[2]);
  return grid;
}

int cmd_analyze_reward(double gamma, std::optional<double> g, bool use_optimal_g, const std::string& grid_spec,
                       const std::string& out_path, std::ostream& out) {
  analysis::AnalysisParams params{gamma, use_optimal_g ? analysis::optimal_g() : g.value_or(1.0)};
  params.validate();
  const std::string csv = analysis::value_curve_csv(params, parse_grid(grid_spec));
  if (out_path.empty()) {
    out << csv;
    return kExitOk;
  }
  write_file(out_path, csv);
  const auto ell = params.g > 0.0 ? analysis::optimal_depth(params) : std::nullopt;
  out << "g=" << format_double(params.g) << " ell_opt=" << (ell ? format_double(*ell) : std::string("none")) << '\n';
  return kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Hierarchy quality for search: evaluate hierarchical clusterings with a simulated search bot"};
  app.require_subcommand(1);

  RunConfig cfg;
  auto* evaluate = app.add_subcommand("evaluate", "Compute HQS for a hierarchy and its items");
  evaluate->add_option("--hierarchy", cfg.hierarchy_path, "Hierarchy JSON file")->required();
  evaluate->add_option("--items", cfg.items_path, "Items JSON Lines file")->required();
  evaluate->add_option("--similarity", cfg.similarity, "avg-cosine | inv-sq-euclid")
      ->check(CLI::IsMember({"avg-cosine", "inv-sq-euclid"}));
  evaluate->add_option("--delta", cfg.delta, "Base Boltzmann temperature");
  evaluate->add_option("--nu", cfg.nu, "Per-depth temperature growth factor (>= 1)");
  evaluate->add_option("--sample-frac", cfg.sample_fraction, "Fraction of items to evaluate, in (0, 1]");
  evaluate->add_option("--seed", cfg.seed, "Sampling seed");
  evaluate->add_option("--workers", cfg.workers, "Worker threads (0 = all cores)");
  evaluate->add_option("--out", cfg.out_path, "Report output path");
  evaluate->add_option("--format", cfg.format, "json | csv")->check(CLI::IsMember({"json", "csv"}));
  evaluate->add_flag("--summary-only", cfg.summary_only, "Omit per-item traces from the JSON report");
  evaluate->add_flag("--reproducible", cfg.reproducible, "Write wall_time_ms as 0 for byte-stable reports");

  std::string hai_a;
  std::string hai_b;
  auto* hai_cmd = app.add_subcommand("hai", "Hierarchical Agreement Index of A against ground truth B");
  hai_cmd->add_option("hierarchy", hai_a, "Hierarchy to score")->required();
  hai_cmd->add_option("ground_truth", hai_b, "Ground-truth hierarchy")->required();

  std::string ac_items;
  std::string ac_out;
  auto* build_ac = app.add_subcommand("build-ac", "Build an average-link agglomerative hierarchy");
  build_ac->add_option("--items", ac_items, "Items JSON Lines file")->required();
  build_ac->add_option("--out", ac_out, "Output hierarchy JSON path")->required();

  double gamma = 0.0;
  std::optional<double> g;
  bool use_optimal_g = false;
  std::string grid = "0:10:0.5";
  std::string analysis_out;
  auto* analyze = app.add_subcommand("analyze-reward", "Value curve of the constant-guidance reward model");
  analyze->add_option("--gamma", gamma, "Per-step probability of staying on the correct path")->required();
  auto* g_opt = analyze->add_option("--g", g, "Reward exponent (alpha = gamma^g)");
  auto* gstar_opt = analyze->add_flag("--optimal-g", use_optimal_g, "Use the g that maximises the optimal depth");
  g_opt->excludes(gstar_opt);
  analyze->add_option("--grid", grid, "Depth grid start:stop:step");
  analyze->add_option("--out", analysis_out, "CSV output path (stdout when omitted)");

  std::vector<const char*> argv;
  argv.reserve(args.size());
  for (const auto& a : args) argv.push_back(a.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitInput;
  }

  try {
    if (*evaluate) return cmd_evaluate(cfg, out, err);
    if (*hai_cmd) return cmd_hai(hai_a, hai_b, out, err);
    if (*build_ac) return cmd_build_ac(ac_items, ac_out, out);
    if (*analyze) {
      if (!g && !use_optimal_g) throw InputError("analyze-reward needs --g or --optimal-g");
      return cmd_analyze_reward(gamma, g, use_optimal_g, grid, analysis_out, out);
    }
  } catch (const InputError& e) {
    err << "error: " << e.what() << '\n';
    return kExitInput;
  } catch (const NumericError& e) {
    err << "numeric error: " << e.what() << '\n';
    return kExitNumeric;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    return kExitInternal;
  }
  return kExitInput;
}

}  // namespace hqs::cli
