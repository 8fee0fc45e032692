#include "crsnoma/rate.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "crsnoma/errors.hpp"
#include "crsnoma/specfun.hpp"

namespace crsnoma {

namespace {

constexpr double kInvTwoLn2 = 0.5 / std::numbers::ln2;
constexpr double kTailCcdf = 1e-17;
constexpr double kPanelTolerance = 1e-13;
constexpr unsigned kMaxDepth = 20;
constexpr double kMaxPanelError = 1e-11;

using Kronrod = boost::math::quadrature::gauss_kronrod<double, 31>;

// Neumaier summation.
class CompensatedSum {
 public:
  void add(double value) noexcept {
    const double t = sum_ + value;
    if (std::fabs(sum_) >= std::fabs(value)) {
      compensation_ += (sum_ - t) + value;
    } else {
      compensation_ += (value - t) + sum_;
    }
    sum_ = t;
  }
  double value() const noexcept { return sum_ + compensation_; }

 private:
  double sum_ = 0.0;
  double compensation_ = 0.0;
};

void check_rho(double rho) {
  if (!(rho > 0.0) || !std::isfinite(rho)) {
    throw std::domain_error("transmit SNR must be positive and finite");
  }
}

template <class Ccdf>
double tail_cutoff(const Ccdf& ccdf) {
  double x = 1.0;
  for (int i = 0; i < 80 && ccdf(x) >= kTailCcdf; ++i) x *= 2.0;
  return x;
}

template <class F>
double integrate_panel(const F& f, double a, double b, double rho, std::size_t panel) {
  // Integrate on the unit interval: the library's error estimate is not
  // invariant under rescaling and overstates the error on short panels.
  const double width = b - a;
  const auto unit = [&](double u) { return f(a + width * u); };
  double error = 0.0;
  const double value =
      width * Kronrod::integrate(unit, 0.0, 1.0, kMaxDepth, kPanelTolerance, &error);
  error *= width;
  if (!std::isfinite(value) || error > kMaxPanelError) {
    throw NumericalFailure("quadrature did not converge", rho, panel);
  }
  return value;
}

}  // namespace

std::string_view to_string(RateMethod method) noexcept {
  switch (method) {
    case RateMethod::kClosedForm:
      return "closed_form";
    case RateMethod::kHighSnrApprox:
      return "high_snr_approx";
    case RateMethod::kQuadrature:
      return "quadrature";
  }
  return "unknown";
}

double ergodic_integral(const series::CcdfMixture& mixture, double rho) {
  check_rho(rho);
  CompensatedSum sum;
  for (std::size_t i = 0; i < mixture.size(); ++i) {
    const auto& t = mixture[i];
    if (t.weight == 0.0) continue;
    // Γ(p+1)/ρ^p · e^{λ/ρ} Γ(-p, λ/ρ) rewritten as Γ(p+1) λ^{-p} · e^{λ/ρ} E_{p+1}(λ/ρ).
    const double log_magnitude = std::log(std::fabs(t.weight)) + specfun::ln_factorial(t.power) -
                                 t.power * std::log(t.decay) +
                                 std::log(specfun::normalized_upper_gamma(t.power, t.decay / rho));
    const double term = std::copysign(std::exp(log_magnitude), t.weight);
    if (!std::isfinite(term)) throw NumericalFailure("non-finite rate term", rho, i);
    sum.add(term);
  }
  return sum.value();
}

series::CcdfMixture strong_symbol_mixture(const SystemConfig& cfg) {
  return series::min_pair_mixture(cfg.sr, cfg.n_r, 1.0, cfg.sd, cfg.n_d, 1.0, cfg.combiner);
}

series::CcdfMixture weak_symbol_mixture(const SystemConfig& cfg) {
  return series::min_pair_mixture(cfg.sr, cfg.n_r, cfg.a2, cfg.rd, cfg.n_d, 1.0, cfg.combiner);
}

double rate_s1_closed(const SystemConfig& cfg, double rho) {
  check_rho(rho);
  cfg.validate();
  const auto mixture = strong_symbol_mixture(cfg);
  return kInvTwoLn2 * (ergodic_integral(mixture, rho) - ergodic_integral(mixture, rho * cfg.a2));
}

double rate_s2_closed(const SystemConfig& cfg, double rho) {
  check_rho(rho);
  cfg.validate();
  return kInvTwoLn2 * ergodic_integral(weak_symbol_mixture(cfg), rho);
}

RateReport rate_total(const SystemConfig& cfg, double rho) {
  RateReport report;
  report.rho = rho;
  report.rate_s1 = rate_s1_closed(cfg, rho);
  report.rate_s2 = rate_s2_closed(cfg, rho);
  report.rate_total = report.rate_s1 + report.rate_s2;
  report.method = RateMethod::kClosedForm;
  return report;
}

double high_snr_s2_offset(const SystemConfig& cfg) {
  cfg.validate();
  CompensatedSum sum;
  for (const auto& t : weak_symbol_mixture(cfg)) {
    const double log_decay = std::log(t.decay);
    const int p = t.power;
    // Γ(p+1){ψ(p+1) - ln λ} - p Γ(p){ψ(p) - ln λ}; the second part vanishes at p = 0.
    double bracket = std::exp(specfun::ln_factorial(p)) * (specfun::digamma_int(p + 1) - log_decay);
    if (p > 0) {
      bracket -= p * std::exp(specfun::ln_factorial(p - 1)) * (specfun::digamma_int(p) - log_decay);
    }
    sum.add(t.weight * std::exp(-p * log_decay) * bracket);
  }
  return kInvTwoLn2 * sum.value();
}

double high_snr_s2_offset_quadrature(const SystemConfig& cfg) {
  cfg.validate();
  const auto ccdf = [&](double x) {
    return min_pair_ccdf(cfg.sr, cfg.n_r, cfg.a2, cfg.rd, cfg.n_d, 1.0, cfg.combiner, x);
  };
  // E[ln Y] = ∫ u · f_Y(e^u) · e^u du.
  const auto integrand = [&](double u) {
    const double x = std::exp(u);
    return u * x * min_pair_pdf(cfg.sr, cfg.n_r, cfg.a2, cfg.rd, cfg.n_d, 1.0, cfg.combiner, x);
  };
  const double u_lo = -60.0;
  const double u_hi = std::log(tail_cutoff(ccdf));
  CompensatedSum sum;
  std::size_t panel = 0;
  for (double a = u_lo; a < u_hi; a += 4.0, ++panel) {
    sum.add(integrate_panel(integrand, a, std::min(a + 4.0, u_hi), 0.0, panel));
  }
  return kInvTwoLn2 * sum.value();
}

RateReport rate_high_snr(const SystemConfig& cfg, double rho) {
  check_rho(rho);
  RateReport report;
  report.rho = rho;
  report.rate_s1 = 0.5 * std::log2(1.0 + cfg.a1() / cfg.a2);
  report.rate_s2 = 0.5 * std::log2(rho) + high_snr_s2_offset(cfg);
  report.rate_total = report.rate_s1 + report.rate_s2;
  report.method = RateMethod::kHighSnrApprox;
  return report;
}

double ergodic_integral_quadrature(const LinkSpec& link_a, int n_a, double scale_a,
                                   const LinkSpec& link_b, int n_b, double scale_b,
                                   Combiner combiner, double rho) {
  check_rho(rho);
  const auto ccdf = [&](double x) {
    return min_pair_ccdf(link_a, n_a, scale_a, link_b, n_b, scale_b, combiner, x);
  };
  const auto integrand = [&](double x) { return rho * ccdf(x) / (1.0 + rho * x); };
  const double cutoff = tail_cutoff(ccdf);

  // Geometric panels resolve the 1/(1 + ρx) knee at x ~ 1/ρ.
  CompensatedSum sum;
  double a = 0.0;
  double b = std::min(1.0 / rho, cutoff);
  std::size_t panel = 0;
  while (a < cutoff) {
    sum.add(integrate_panel(integrand, a, b, rho, panel++));
    a = b;
    b = std::min(2.0 * b, cutoff);
  }
  return sum.value();
}

RateReport rate_quadrature_oracle(const SystemConfig& cfg, double rho) {
  check_rho(rho);
  cfg.validate();
  const auto strong = [&](double r) {
    return ergodic_integral_quadrature(cfg.sr, cfg.n_r, 1.0, cfg.sd, cfg.n_d, 1.0, cfg.combiner,
                                       r);
  };
  RateReport report;
  report.rho = rho;
  report.rate_s1 = kInvTwoLn2 * (strong(rho) - strong(rho * cfg.a2));
  report.rate_s2 = kInvTwoLn2 * ergodic_integral_quadrature(cfg.sr, cfg.n_r, cfg.a2, cfg.rd,
                                                            cfg.n_d, 1.0, cfg.combiner, rho);
  report.rate_total = report.rate_s1 + report.rate_s2;
  report.method = RateMethod::kQuadrature;
  return report;
}

}  // namespace crsnoma
