#ifndef CRSNOMA_SERIES_HPP_
#define CRSNOMA_SERIES_HPP_

#include <cstdint>
#include <span>
#include <vector>

#include "crsnoma/channel.hpp"

namespace crsnoma::series {

/// Every length-`parts` vector of non-negative integers summing to n, in
/// ascending lexicographic order. With exclude_first_full the vector
/// (n, 0, ..., 0) is dropped.
std::vector<std::vector<int>> weak_compositions(int n, int parts, bool exclude_first_full);

/// n! / (k_0! ... k_m!) in exact integer arithmetic.
/// Throws std::invalid_argument if the ks do not sum to n or any is
/// negative, std::overflow_error if the result exceeds 64 bits.
std::uint64_t multinomial(int n, std::span<const int> ks);

/// One term of the SC order-statistic CCDF expansion
///
///   1 - P(m, r·x)^N = Σ coeff · r^exponent · x^exponent · exp(-decay·x),
///
/// where r = m / (scale·Ω). ks[0] plays the role of k_0 and ks[μ+1]
/// counts how often the μ-th Taylor term of e^{-y} Σ y^μ/μ! was picked.
struct CompositionTerm {
  std::vector<int> ks;
  double coeff = 0.0;    // (-1)^{N-k0+1} · multinomial · Π (1/μ!)^{k_{μ+1}}
  int exponent = 0;      // τ = Σ μ·k_{μ+1}
  double rate = 0.0;     // r = m / (scale·Ω)
  double decay = 0.0;    // (N - k0)·r
};

std::vector<CompositionTerm> expansion_terms(const LinkSpec& link, int n_antennas,
                                             double gain_scale);

/// Sum of the expansion at x; equals the SC gain CCDF at x / gain_scale.
double evaluate_terms(std::span<const CompositionTerm> terms, double x);

/// A CCDF written as a finite exponential-polynomial mixture
/// Σ weight · x^power · exp(-decay·x).
struct MixtureTerm {
  double weight = 0.0;
  int power = 0;
  double decay = 0.0;
};

using CcdfMixture = std::vector<MixtureTerm>;

/// Expansion of Pr(min(scale_a·G_a, scale_b·G_b) > x). For SC this is the
/// product of two composition expansions (one term per pair of
/// compositions, never merged); for MRC it is the double Poisson sum
/// e^{-(r_a + r_b)x} Σ_μ Σ_ν r_a^μ r_b^ν x^{μ+ν} / (μ! ν!).
CcdfMixture min_pair_mixture(const LinkSpec& link_a, int n_a, double scale_a,
                             const LinkSpec& link_b, int n_b, double scale_b, Combiner combiner);

double evaluate(const CcdfMixture& mixture, double x);

}  // namespace crsnoma::series

#endif  // CRSNOMA_SERIES_HPP_
