#include "crsnoma/outage.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "crsnoma/specfun.hpp"

namespace crsnoma {

namespace {

// ln(1 - F) with F = gain_cdf; stays accurate when F is tiny.
double log_ccdf(const LinkSpec& link, int n, Combiner combiner, double x) {
  const double cdf = gain_cdf(link, n, combiner, x);
  if (cdf < 0.5) return std::log1p(-cdf);
  return std::log(gain_ccdf(link, n, combiner, x));
}

}  // namespace

OutageThresholds thresholds(double a2, double rho, double target_rate) {
  if (!(a2 > 0.0 && a2 < 0.5)) throw std::domain_error("thresholds: a2 must lie in (0, 0.5)");
  if (!(rho > 0.0)) throw std::domain_error("thresholds: rho must be positive");
  if (!(target_rate > 0.0)) throw std::domain_error("thresholds: target rate must be positive");

  OutageThresholds out;
  out.theta = std::exp2(2.0 * target_rate) - 1.0;
  const double a1 = 1.0 - a2;
  const double margin = a1 - a2 * out.theta;
  out.feasible = margin > 0.0;
  if (!out.feasible) return out;

  DecodingThresholds d;
  d.delta1 = out.theta / (rho * margin);
  d.delta2 = std::max(d.delta1, out.theta / (a2 * rho));
  d.delta3 = out.theta / rho;
  out.deltas = d;
  return out;
}

double outage_closed(const SystemConfig& cfg, double rho) {
  cfg.validate();
  const auto th = thresholds(cfg.a2, rho, cfg.target_rate);
  if (!th.feasible) return 1.0;
  const auto& d = *th.deltas;
  const double log_success = log_ccdf(cfg.sd, cfg.n_d, cfg.combiner, d.delta1) +
                             log_ccdf(cfg.sr, cfg.n_r, cfg.combiner, d.delta2) +
                             log_ccdf(cfg.rd, cfg.n_d, cfg.combiner, d.delta3);
  return -std::expm1(log_success);
}

double branch_leading_coefficient(int m, double omega) {
  return std::exp(m * std::log(m / omega) - specfun::ln_factorial(m));
}

double leading_cdf_coefficient(const LinkSpec& link, int n, Combiner combiner) {
  link.validate();
  if (combiner == Combiner::kSc) return std::pow(branch_leading_coefficient(link.m, link.omega), n);
  const int order = link.m * n;
  return std::exp(order * std::log(link.m / link.omega) - specfun::ln_factorial(order));
}

double asymptotic_outage(const SystemConfig& cfg, double rho) {
  cfg.validate();
  const auto th = thresholds(cfg.a2, rho, cfg.target_rate);
  if (!th.feasible) return 1.0;
  const auto& d = *th.deltas;
  const auto leading = [&](const LinkSpec& link, int n, double delta) {
    return leading_cdf_coefficient(link, n, cfg.combiner) * std::pow(delta, link.m * n);
  };
  return leading(cfg.sd, cfg.n_d, d.delta1) + leading(cfg.sr, cfg.n_r, d.delta2) +
         leading(cfg.rd, cfg.n_d, d.delta3);
}

double diversity_slope_estimate(std::span<const std::pair<double, double>> points) {
  if (points.size() < 2) throw std::domain_error("diversity_slope_estimate: need >= 2 points");
  double sx = 0.0, sy = 0.0;
  for (std::size_t i = 0; i < points.size(); ++i) {
    const auto [rho_db, outage] = points[i];
    if (!(outage > 0.0 && outage < 1.0)) {
      throw std::domain_error("diversity_slope_estimate: outage must lie in (0, 1)");
    }
    if (i > 0 && !(rho_db > points[i - 1].first)) {
      throw std::domain_error("diversity_slope_estimate: rho must be strictly increasing");
    }
    sx += rho_db / 10.0;
    sy += std::log10(outage);
  }
  const double n = static_cast<double>(points.size());
  const double mean_x = sx / n;
  const double mean_y = sy / n;
  double sxx = 0.0, sxy = 0.0;
  for (const auto& [rho_db, outage] : points) {
    const double dx = rho_db / 10.0 - mean_x;
    sxx += dx * dx;
    sxy += dx * (std::log10(outage) - mean_y);
  }
  return -sxy / sxx;
}

}  // namespace crsnoma
