#include "crsnoma/power_opt.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "crsnoma/outage.hpp"

namespace crsnoma {

namespace {

void check_grid(std::span<const double> grid) {
  if (grid.empty()) throw std::domain_error("a2 grid is empty");
  for (double a2 : grid) {
    if (!(a2 > 0.0 && a2 < 0.5)) throw std::domain_error("a2 grid values must lie in (0, 0.5)");
  }
}

}  // namespace

std::vector<double> default_a2_grid() {
  std::vector<double> grid;
  for (int k = 1; k <= 24; ++k) grid.push_back(k / 100.0);
  return grid;
}

std::vector<double> refined_a2_grid(double center, double half_width, double step) {
  if (!(step > 0.0) || !(half_width >= 0.0)) {
    throw std::domain_error("refined grid needs a positive step");
  }
  std::vector<double> grid;
  const long count = std::lround(2.0 * half_width / step);
  for (long i = 0; i <= count; ++i) {
    // Snap to 1e-9 so grid points print as the decimals they represent.
    const double a2 =
        std::round((center - half_width + static_cast<double>(i) * step) * 1e9) / 1e9;
    if (a2 > 0.0 && a2 < 0.5) grid.push_back(a2);
  }
  return grid;
}

OptResult optimal_a2(const SystemConfig& cfg, double rho, std::span<const double> grid) {
  check_grid(grid);
  OptResult result;
  result.outage_at_star = std::numeric_limits<double>::infinity();
  SystemConfig trial = cfg;
  for (double a2 : grid) {
    trial.a2 = a2;
    const double outage = outage_closed(trial, rho);
    result.per_point.emplace_back(a2, outage);
    if (outage < result.outage_at_star) {
      result.outage_at_star = outage;
      result.a2_star = a2;
    }
  }
  return result;
}

OptResult optimal_a2_refined(const SystemConfig& cfg, double rho) {
  const auto coarse_grid = default_a2_grid();
  const auto coarse = optimal_a2(cfg, rho, coarse_grid);
  const auto fine_grid = refined_a2_grid(coarse.a2_star, 0.01, 0.001);
  auto fine = optimal_a2(cfg, rho, fine_grid);
  if (coarse.outage_at_star < fine.outage_at_star) return coarse;
  return fine;
}

std::vector<FactorTraceRow> ccdf_factor_trace(const SystemConfig& cfg, double rho,
                                              std::span<const double> grid) {
  check_grid(grid);
  std::vector<FactorTraceRow> rows;
  SystemConfig trial = cfg;
  for (double a2 : grid) {
    trial.a2 = a2;
    FactorTraceRow row;
    row.a2 = a2;
    const auto th = thresholds(a2, rho, cfg.target_rate);
    if (th.feasible) {
      row.delta1 = th.deltas->delta1;
      row.delta2 = th.deltas->delta2;
      row.ccdf_sd = gain_ccdf(cfg.sd, cfg.n_d, cfg.combiner, row.delta1);
      row.ccdf_sr = gain_ccdf(cfg.sr, cfg.n_r, cfg.combiner, row.delta2);
    } else {
      row.delta1 = std::numeric_limits<double>::quiet_NaN();
      row.delta2 = std::numeric_limits<double>::quiet_NaN();
    }
    row.product = row.ccdf_sd * row.ccdf_sr;
    row.outage = outage_closed(trial, rho);
    rows.push_back(row);
  }
  return rows;
}

}  // namespace crsnoma
