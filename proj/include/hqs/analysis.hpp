// Copyright 2026 The HQS Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace hqs::analysis {

/// Constant-guidance model: every step stays on the correct path with
/// probability `gamma_step`, and the reward for stopping at level l is
/// 1 - alpha^l with alpha = gamma_step^g.
struct AnalysisParams {
  double gamma_step = 0.9;
  double g = 1.0;

  /// Throws InputError unless 0 < gamma_step < 1 and g >= 0.
  void validate() const;
};

/// V(l) = gamma^l (2 - gamma^{g l}) - 1
double value_at(const AnalysisParams& p, double depth);

/// Turning point of V: ln(2) - ln(1 + g) over g ln(gamma). Empty for g < 1,
/// where the turning point is not at a non-negative depth. Throws InputError
/// for g == 0.
std::optional<double> optimal_depth(const AnalysisParams& p);

/// f(g) = g + (1 + g)(ln 2 - ln(1 + g)); its root maximises optimal_depth
/// over g.
double optimal_g_residual(double g);

/// Root of optimal_g_residual on (1, 10) by bisection to 1e-10.
double optimal_g();

/// 1 / ((1 + g*)(-ln gamma)). Throws InputError unless 0 < gamma < 1.
double optimal_depth_at_gstar(double gamma_step);

/// (l, V(l)) for every l in the grid.
std::vector<std::pair<double, double>> value_curve(const AnalysisParams& p, std::span<const double> grid);

/// "ell,value" header followed by one row per grid point.
std::string value_curve_csv(const AnalysisParams& p, std::span<const double> grid);

}  // namespace hqs::analysis
