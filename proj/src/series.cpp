#include "crsnoma/series.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>

#include "crsnoma/specfun.hpp"

namespace crsnoma::series {

namespace {

void append_compositions(int remaining, std::size_t slot, std::vector<int>& current,
                         std::vector<std::vector<int>>& out) {
  if (slot + 1 == current.size()) {
    current[slot] = remaining;
    out.push_back(current);
    return;
  }
  for (int k = 0; k <= remaining; ++k) {
    current[slot] = k;
    append_compositions(remaining - k, slot + 1, current, out);
  }
}

std::uint64_t checked_mul(std::uint64_t a, std::uint64_t b) {
  std::uint64_t product = 0;
  if (__builtin_mul_overflow(a, b, &product)) {
    throw std::overflow_error("multinomial coefficient exceeds 64 bits");
  }
  return product;
}

// C(n, k) exactly. Each partial product C(n-k+j, j) is an integer; reducing
// by gcd(result, j) first keeps the division exact without widening.
std::uint64_t binomial(int n, int k) {
  std::uint64_t result = 1;
  for (int j = 1; j <= k; ++j) {
    const std::uint64_t g = std::gcd(result, static_cast<std::uint64_t>(j));
    const std::uint64_t factor = static_cast<std::uint64_t>(n - k + j) / (j / g);
    result = checked_mul(result / g, factor);
  }
  return result;
}

}  // namespace

std::vector<std::vector<int>> weak_compositions(int n, int parts, bool exclude_first_full) {
  if (parts < 1) throw std::invalid_argument("weak_compositions: parts must be >= 1");
  if (n < 0) throw std::invalid_argument("weak_compositions: n must be >= 0");
  std::vector<std::vector<int>> out;
  std::vector<int> current(static_cast<std::size_t>(parts), 0);
  append_compositions(n, 0, current, out);
  if (exclude_first_full) {
    // (n, 0, ..., 0) is lexicographically last.
    out.pop_back();
  }
  return out;
}

std::uint64_t multinomial(int n, std::span<const int> ks) {
  int running = 0;
  std::uint64_t result = 1;
  for (int k : ks) {
    if (k < 0) throw std::invalid_argument("multinomial: negative part");
    running += k;
    result = checked_mul(result, binomial(running, k));
  }
  if (running != n) throw std::invalid_argument("multinomial: parts do not sum to n");
  return result;
}

std::vector<CompositionTerm> expansion_terms(const LinkSpec& link, int n_antennas,
                                             double gain_scale) {
  link.validate();
  if (n_antennas < 1) throw std::invalid_argument("expansion_terms: antennas must be >= 1");
  if (!(gain_scale > 0.0)) throw std::invalid_argument("expansion_terms: scale must be positive");

  const double rate = link.m / (gain_scale * link.omega);
  std::vector<CompositionTerm> terms;
  for (auto& ks : weak_compositions(n_antennas, link.m + 1, true)) {
    CompositionTerm term;
    const int k0 = ks[0];
    double log_factorials = 0.0;
    int exponent = 0;
    for (int mu = 0; mu < link.m; ++mu) {
      const int count = ks[static_cast<std::size_t>(mu) + 1];
      exponent += mu * count;
      log_factorials += count * specfun::ln_factorial(mu);
    }
    const double sign = ((n_antennas - k0 + 1) % 2 == 0) ? 1.0 : -1.0;
    term.coeff = sign * static_cast<double>(multinomial(n_antennas, ks)) * std::exp(-log_factorials);
    term.exponent = exponent;
    term.rate = rate;
    term.decay = (n_antennas - k0) * rate;
    term.ks = std::move(ks);
    terms.push_back(std::move(term));
  }
  return terms;
}

double evaluate_terms(std::span<const CompositionTerm> terms, double x) {
  double sum = 0.0;
  for (const auto& t : terms) {
    sum += t.coeff * std::pow(t.rate * x, t.exponent) * std::exp(-t.decay * x);
  }
  return sum;
}

CcdfMixture min_pair_mixture(const LinkSpec& link_a, int n_a, double scale_a,
                             const LinkSpec& link_b, int n_b, double scale_b, Combiner combiner) {
  CcdfMixture mixture;
  if (combiner == Combiner::kSc) {
    const auto terms_a = expansion_terms(link_a, n_a, scale_a);
    const auto terms_b = expansion_terms(link_b, n_b, scale_b);
    mixture.reserve(terms_a.size() * terms_b.size());
    for (const auto& ta : terms_a) {
      for (const auto& tb : terms_b) {
        const double weight = ta.coeff * std::pow(ta.rate, ta.exponent) * tb.coeff *
                              std::pow(tb.rate, tb.exponent);
        mixture.push_back({weight, ta.exponent + tb.exponent, ta.decay + tb.decay});
      }
    }
    return mixture;
  }

  link_a.validate();
  link_b.validate();
  if (!(scale_a > 0.0) || !(scale_b > 0.0)) {
    throw std::invalid_argument("min_pair_mixture: scales must be positive");
  }
  const double rate_a = link_a.m / (scale_a * link_a.omega);
  const double rate_b = link_b.m / (scale_b * link_b.omega);
  const int terms_a = link_a.m * n_a;
  const int terms_b = link_b.m * n_b;
  mixture.reserve(static_cast<std::size_t>(terms_a) * terms_b);
  for (int mu = 0; mu < terms_a; ++mu) {
    for (int nu = 0; nu < terms_b; ++nu) {
      const double log_weight = mu * std::log(rate_a) + nu * std::log(rate_b) -
                                specfun::ln_factorial(mu) - specfun::ln_factorial(nu);
      mixture.push_back({std::exp(log_weight), mu + nu, rate_a + rate_b});
    }
  }
  return mixture;
}

double evaluate(const CcdfMixture& mixture, double x) {
  double sum = 0.0;
  for (const auto& t : mixture) {
    sum += t.weight * std::pow(x, t.power) * std::exp(-t.decay * x);
  }
  return sum;
}

}  // namespace crsnoma::series
