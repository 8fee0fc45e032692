#ifndef CRSNOMA_CHANNEL_HPP_
#define CRSNOMA_CHANNEL_HPP_

#include <string>
#include <string_view>
#include <vector>

#include "crsnoma/random.hpp"

namespace crsnoma {

/// Statistics of one Nakagami-m link: integer shape m and mean-square Ω.
struct LinkSpec {
  int m = 1;
  double omega = 1.0;

  /// Throws std::invalid_argument unless m >= 1 and omega > 0.
  void validate(std::string_view name = "link") const;
};

enum class Combiner { kSc, kMrc };

std::string_view to_string(Combiner combiner) noexcept;

/// Whole-system configuration. Links are source-relay, source-destination
/// and relay-destination; n_r / n_d are receive antennas at relay and
/// destination; a2 is the power share of the weak symbol (a1 = 1 - a2).
struct SystemConfig {
  LinkSpec sr{1, 10.0};
  LinkSpec sd{1, 1.0};
  LinkSpec rd{1, 2.5};
  int n_r = 1;
  int n_d = 1;
  Combiner combiner = Combiner::kSc;
  double a2 = 0.1;
  double target_rate = 1.0;

  double a1() const noexcept { return 1.0 - a2; }

  /// Throws std::invalid_argument on a hard violation (m < 1, Ω <= 0,
  /// antennas < 1, a2 outside (0, 0.5), target rate <= 0). Soft
  /// violations (Ω_sd >= Ω_sr) come back as warning strings.
  std::vector<std::string> validate() const;
};

/// CDF of the post-combining gain of n i.i.d. branches at x >= 0:
/// SC takes the max of the branch powers, MRC their sum.
double gain_cdf(const LinkSpec& link, int n, Combiner combiner, double x);

/// 1 - gain_cdf, computed without cancellation on the small side.
double gain_ccdf(const LinkSpec& link, int n, Combiner combiner, double x);

/// Density of the post-combining gain at x >= 0.
double gain_pdf(const LinkSpec& link, int n, Combiner combiner, double x);

/// Pr(min(scale_a·G_a, scale_b·G_b) > x) for independent gains G_a, G_b.
double min_pair_ccdf(const LinkSpec& link_a, int n_a, double scale_a, const LinkSpec& link_b,
                     int n_b, double scale_b, Combiner combiner, double x);

/// Density of min(scale_a·G_a, scale_b·G_b) at x >= 0.
double min_pair_pdf(const LinkSpec& link_a, int n_a, double scale_a, const LinkSpec& link_b,
                    int n_b, double scale_b, Combiner combiner, double x);

/// Draws one post-combining gain: each branch power is Gamma(m, Ω/m).
double sample_gain(const LinkSpec& link, int n, Combiner combiner, RandomStream& rng);

}  // namespace crsnoma

#endif  // CRSNOMA_CHANNEL_HPP_
