#include "crsnoma/channel.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "crsnoma/specfun.hpp"

namespace crsnoma {

namespace {

void check_gain_args(int n, double x) {
  if (n < 1) throw std::invalid_argument("antenna count must be >= 1");
  if (!(x >= 0.0)) throw std::domain_error("gain argument must be non-negative");
}

// Density of Gamma(shape, 1/rate) at x.
double gamma_pdf(double shape, double rate, double x) {
  if (x == 0.0) return shape == 1.0 ? rate : 0.0;
  return std::exp(shape * std::log(rate) + (shape - 1.0) * std::log(x) - rate * x -
                  specfun::ln_gamma(shape));
}

}  // namespace

void LinkSpec::validate(std::string_view name) const {
  if (m < 1) {
    throw std::invalid_argument(std::string(name) + ": shape m must be a positive integer");
  }
  if (!(omega > 0.0) || !std::isfinite(omega)) {
    throw std::invalid_argument(std::string(name) + ": mean-square omega must be positive");
  }
}

std::string_view to_string(Combiner combiner) noexcept {
  return combiner == Combiner::kSc ? "sc" : "mrc";
}

std::vector<std::string> SystemConfig::validate() const {
  sr.validate("s-r link");
  sd.validate("s-d link");
  rd.validate("r-d link");
  if (n_r < 1) throw std::invalid_argument("n_r must be >= 1");
  if (n_d < 1) throw std::invalid_argument("n_d must be >= 1");
  if (!(a2 > 0.0 && a2 < 0.5)) {
    throw std::invalid_argument("a2 must lie in (0, 0.5) so that a1 > a2");
  }
  if (!(target_rate > 0.0) || !std::isfinite(target_rate)) {
    throw std::invalid_argument("target rate must be positive");
  }
  std::vector<std::string> warnings;
  if (!(sd.omega < sr.omega)) {
    warnings.emplace_back("omega_sd >= omega_sr: the direct link is not weaker than s-r");
  }
  return warnings;
}

double gain_cdf(const LinkSpec& link, int n, Combiner combiner, double x) {
  check_gain_args(n, x);
  const double y = link.m * x / link.omega;
  if (combiner == Combiner::kMrc) return specfun::reg_lower_gamma(link.m * n, y);
  return std::pow(specfun::reg_lower_gamma(link.m, y), n);
}

double gain_ccdf(const LinkSpec& link, int n, Combiner combiner, double x) {
  check_gain_args(n, x);
  const double y = link.m * x / link.omega;
  if (combiner == Combiner::kMrc) return specfun::reg_upper_gamma(link.m * n, y);
  const double p = specfun::reg_lower_gamma(link.m, y);
  if (p < 0.5) return 1.0 - std::pow(p, n);
  // 1 - (1 - q)^n without forming 1 - q.
  return -std::expm1(n * std::log1p(-specfun::reg_upper_gamma(link.m, y)));
}

double gain_pdf(const LinkSpec& link, int n, Combiner combiner, double x) {
  check_gain_args(n, x);
  const double rate = link.m / link.omega;
  if (combiner == Combiner::kMrc) return gamma_pdf(link.m * n, rate, x);
  const double branch = gamma_pdf(link.m, rate, x);
  if (n == 1) return branch;
  return n * std::pow(specfun::reg_lower_gamma(link.m, rate * x), n - 1) * branch;
}

double min_pair_ccdf(const LinkSpec& link_a, int n_a, double scale_a, const LinkSpec& link_b,
                     int n_b, double scale_b, Combiner combiner, double x) {
  if (!(scale_a > 0.0) || !(scale_b > 0.0)) {
    throw std::invalid_argument("min_pair_ccdf: scales must be positive");
  }
  return gain_ccdf(link_a, n_a, combiner, x / scale_a) *
         gain_ccdf(link_b, n_b, combiner, x / scale_b);
}

double min_pair_pdf(const LinkSpec& link_a, int n_a, double scale_a, const LinkSpec& link_b,
                    int n_b, double scale_b, Combiner combiner, double x) {
  if (!(scale_a > 0.0) || !(scale_b > 0.0)) {
    throw std::invalid_argument("min_pair_pdf: scales must be positive");
  }
  const double xa = x / scale_a;
  const double xb = x / scale_b;
  return gain_pdf(link_a, n_a, combiner, xa) / scale_a * gain_ccdf(link_b, n_b, combiner, xb) +
         gain_ccdf(link_a, n_a, combiner, xa) * gain_pdf(link_b, n_b, combiner, xb) / scale_b;
}

double sample_gain(const LinkSpec& link, int n, Combiner combiner, RandomStream& rng) {
  const double shape = link.m;
  const double scale = link.omega / link.m;
  double acc = 0.0;
  for (int i = 0; i < n; ++i) {
    const double g = rng.gamma(shape, scale);
    if (combiner == Combiner::kMrc) {
      acc += g;
    } else if (g > acc) {
      acc = g;
    }
  }
  return acc;
}

}  // namespace crsnoma
