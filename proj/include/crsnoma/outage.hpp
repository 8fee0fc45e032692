#ifndef CRSNOMA_OUTAGE_HPP_
#define CRSNOMA_OUTAGE_HPP_

#include <optional>
#include <span>
#include <utility>

#include "crsnoma/channel.hpp"

namespace crsnoma {

/// Gain thresholds below which a decoding step fails.
struct DecodingThresholds {
  double delta1 = 0.0;  // s1 at the destination, first slot
  double delta2 = 0.0;  // s1 and s2 at the relay
  double delta3 = 0.0;  // s2 at the destination, second slot
};

struct OutageThresholds {
  double theta = 0.0;  // 2^{2R} - 1
  bool feasible = false;
  std::optional<DecodingThresholds> deltas;  // unset when infeasible
};

/// Feasible iff a1 - a2·θ > 0, i.e. a2 < 1/(1+θ). Infeasibility is a
/// value, not an error.
OutageThresholds thresholds(double a2, double rho, double target_rate);

/// 1 - Π of the three gain CCDFs at (Δ1 on s-d, Δ2 on s-r, Δ3 on r-d);
/// exactly 1.0 when a2 is infeasible. Accurate down to ~1e-300.
double outage_closed(const SystemConfig& cfg, double rho);

/// Leading small-argument coefficient c of a gain CDF, F(x) ≈ c·x^{mN}:
/// SC gives [(m/Ω)^m / m!]^N, MRC gives (m/Ω)^{mN} / (mN)!.
double leading_cdf_coefficient(const LinkSpec& link, int n, Combiner combiner);

/// Single-branch coefficient (m/Ω)^m / Γ(m+1), i.e. P(m, m x/Ω) ≈ c x^m.
double branch_leading_coefficient(int m, double omega);

/// Sum of the three leading-order link terms c_i·Δ_i^{m_i N_i}.
/// Meaningful for large ρ; ratio to outage_closed tends to 1.
double asymptotic_outage(const SystemConfig& cfg, double rho);

/// −slope of the least-squares line through (log10 ρ, log10 P).
/// Points are (ρ in dB, outage); needs >= 2 points, outage in (0, 1),
/// strictly increasing ρ. Throws std::domain_error otherwise.
double diversity_slope_estimate(std::span<const std::pair<double, double>> points);

}  // namespace crsnoma

#endif  // CRSNOMA_OUTAGE_HPP_
