#ifndef CRSNOMA_RATE_HPP_
#define CRSNOMA_RATE_HPP_

#include <string_view>

#include "crsnoma/channel.hpp"
#include "crsnoma/series.hpp"

namespace crsnoma {

enum class RateMethod { kClosedForm, kHighSnrApprox, kQuadrature };

std::string_view to_string(RateMethod method) noexcept;

/// Ergodic rates in bps/Hz at linear transmit SNR rho.
struct RateReport {
  double rho = 0.0;
  double rate_s1 = 0.0;
  double rate_s2 = 0.0;
  double rate_total = 0.0;
  RateMethod method = RateMethod::kClosedForm;
};

/// ρ ∫_0^∞ CCDF(x) / (1 + ρx) dx for an exponential-polynomial CCDF,
/// summed term by term as Γ(p+1) λ^{-p} e^{λ/ρ} E_{p+1}(λ/ρ) with
/// log-space assembly and compensated summation.
/// Throws NumericalFailure on a non-finite term.
double ergodic_integral(const series::CcdfMixture& mixture, double rho);

/// CCDF expansion of min(g_sr, g_sd), the strong-symbol bottleneck gain.
series::CcdfMixture strong_symbol_mixture(const SystemConfig& cfg);

/// CCDF expansion of min(a2·g_sr, g_rd), the weak-symbol bottleneck gain.
series::CcdfMixture weak_symbol_mixture(const SystemConfig& cfg);

double rate_s1_closed(const SystemConfig& cfg, double rho);
double rate_s2_closed(const SystemConfig& cfg, double rho);

/// Closed-form s1, s2 and their sum.
RateReport rate_total(const SystemConfig& cfg, double rho);

/// High-SNR form: s1 saturates at 0.5·log2(1 + a1/a2) and s2 follows
/// 0.5·log2(ρ) + high_snr_s2_offset(cfg).
RateReport rate_high_snr(const SystemConfig& cfg, double rho);

/// 0.5·E[log2 Y] for Y = min(a2·g_sr, g_rd), from the digamma closed form.
double high_snr_s2_offset(const SystemConfig& cfg);

/// Same constant by direct quadrature of ln(x)·f_Y(x).
double high_snr_s2_offset_quadrature(const SystemConfig& cfg);

/// ρ ∫_0^∞ ccdf(x) / (1 + ρx) dx by adaptive Gauss–Kronrod, where ccdf is
/// evaluated pointwise from min_pair_ccdf. Independent of the expansions.
double ergodic_integral_quadrature(const LinkSpec& link_a, int n_a, double scale_a,
                                   const LinkSpec& link_b, int n_b, double scale_b,
                                   Combiner combiner, double rho);

/// Both symbol rates by quadrature of their defining integrals.
RateReport rate_quadrature_oracle(const SystemConfig& cfg, double rho);

}  // namespace crsnoma

#endif  // CRSNOMA_RATE_HPP_
