// Copyright 2026 The HQS Authors
// SPDX-License-Identifier: Apache-2.0

#include "hqs/analysis.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include <boost/math/tools/roots.hpp>

#include "hqs/error.hpp"
#include "hqs/report.hpp"

namespace hqs::analysis {

void AnalysisParams::validate() const {
  if (!(gamma_step > 0.0 && gamma_step < 1.0)) throw InputError("analysis: gamma must lie in (0, 1)");
  if (!(g >= 0.0) || !std::isfinite(g)) throw InputError("analysis: g must be finite and >= 0");
}

double value_at(const AnalysisParams& p, double depth) {
  p.validate();
  if (!(depth >= 0.0)) throw InputError("analysis: depth must be >= 0");
  const double on_path = std::pow(p.gamma_step, depth);
  const double alpha_l = std::pow(p.gamma_step, p.g * depth);
  return on_path * (2.0 - alpha_l) - 1.0;
}

std::optional<double> optimal_depth(const AnalysisParams& p) {
  p.validate();
  if (p.g == 0.0) throw InputError("analysis: optimal depth is undefined for g = 0");
  if (p.g < 1.0) return std::nullopt;
  return (std::numbers::ln2 - std::log1p(p.g)) / (p.g * std::log(p.gamma_step));
}

double optimal_g_residual(double g) { return g + (1.0 + g) * (std::numbers::ln2 - std::log1p(g)); }

double optimal_g() {
  auto close_enough = [](double a, double b) { return std::abs(b - a) <= 1e-10; };
  auto [lo, hi] = boost::math::tools::bisect(optimal_g_residual, 1.0, 10.0, close_enough);
  return 0.5 * (lo + hi);
}

double optimal_depth_at_gstar(double gamma_step) {
  if (!(gamma_step > 0.0 && gamma_step < 1.0)) throw InputError("analysis: gamma must lie in (0, 1)");
  return 1.0 / ((1.0 + optimal_g()) * -std::log(gamma_step));
}

std::vector<std::pair<double, double>> value_curve(const AnalysisParams& p, std::span<const double> grid) {
  std::vector<std::pair<double, double>> out;
  out.reserve(grid.size());
  for (double ell : grid) out.emplace_back(ell, value_at(p, ell));
  return out;
}

std::string value_curve_csv(const AnalysisParams& p, std::span<const double> grid) {
  std::ostringstream out;
  out << "ell,value\n";
  for (const auto& [ell, v] : value_curve(p, grid)) out << format_double(ell) << ',' << format_double(v) << '\n';
  return out.str();
}

}  // namespace hqs::analysis
