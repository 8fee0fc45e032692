#ifndef CRSNOMA_POWER_OPT_HPP_
#define CRSNOMA_POWER_OPT_HPP_

#include <span>
#include <utility>
#include <vector>

#include "crsnoma/channel.hpp"

namespace crsnoma {

struct OptResult {
  double a2_star = 0.0;
  double outage_at_star = 1.0;
  std::vector<std::pair<double, double>> per_point;  // (a2, outage), grid order
};

/// {0.01, 0.02, ..., 0.24}.
std::vector<double> default_a2_grid();

/// Uniform grid of the given step over [center - half_width, center + half_width],
/// clipped to the open interval (0, 0.5).
std::vector<double> refined_a2_grid(double center, double half_width, double step);

/// Grid search of closed-form outage over a2. cfg.a2 is ignored. Ties go to
/// the smallest a2 (all-infeasible grids therefore return the first point).
/// Throws std::domain_error on an empty grid or values outside (0, 0.5).
OptResult optimal_a2(const SystemConfig& cfg, double rho, std::span<const double> grid);

/// Coarse default-grid search followed by a 0.001-step pass around the
/// coarse optimum.
OptResult optimal_a2_refined(const SystemConfig& cfg, double rho);

/// Per-a2 decomposition of the outage: the two a2-dependent thresholds,
/// their CCDFs and product, and the total outage. Infeasible points carry
/// NaN thresholds, zero CCDFs and outage 1.
struct FactorTraceRow {
  double a2 = 0.0;
  double delta1 = 0.0;
  double delta2 = 0.0;
  double ccdf_sd = 0.0;
  double ccdf_sr = 0.0;
  double product = 0.0;
  double outage = 1.0;
};

std::vector<FactorTraceRow> ccdf_factor_trace(const SystemConfig& cfg, double rho,
                                              std::span<const double> grid);

}  // namespace crsnoma

#endif  // CRSNOMA_POWER_OPT_HPP_
