#ifndef CRSNOMA_SIMULATOR_HPP_
#define CRSNOMA_SIMULATOR_HPP_

#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "crsnoma/channel.hpp"

namespace crsnoma {

enum class Scheme { kNoma, kOma };

std::string_view to_string(Scheme scheme) noexcept;

struct McEstimate {
  double mean = 0.0;
  double std_error = 0.0;
  std::uint64_t n_trials = 0;
  std::uint64_t master_seed = 0;
};

/// Trials are split into fixed chunks; chunk k draws from
/// RandomStream::substream(seed, k) and the per-chunk statistics are merged
/// in chunk order, so results do not depend on `workers`.
struct SimOptions {
  std::uint64_t chunk_size = std::uint64_t{1} << 16;
  unsigned workers = 0;  // 0: one per hardware thread
};

/// Ergodic rate of the given scheme by Monte Carlo.
///   NOMA: 0.5·log2(1 + a1ρX/(a2ρX + 1)) + 0.5·log2(1 + ρ·min(a2 g_sr, g_rd)),
///         X = min(g_sr, g_sd)
///   OMA:  0.5·log2(1 + ρ·min(g_sr, g_sd + g_rd))
/// Throws std::domain_error if n_trials == 0.
McEstimate simulate_rate(const SystemConfig& cfg, double rho, Scheme scheme,
                         std::uint64_t n_trials, std::uint64_t seed, const SimOptions& opts = {});

/// Fraction of trials in which any of the four NOMA decoding steps falls
/// below θ = 2^{2R} - 1. std_error = sqrt(p(1-p)/n).
McEstimate simulate_outage(const SystemConfig& cfg, double rho, std::uint64_t n_trials,
                           std::uint64_t seed, const SimOptions& opts = {});

enum class Metric { kRate, kOutage };

std::string_view to_string(Metric metric) noexcept;

/// One grid point of a sweep. Absent values are std::nullopt; OMA rows
/// never carry analytic fields.
struct SweepRow {
  double rho_db = 0.0;
  Scheme scheme = Scheme::kNoma;
  SystemConfig config;
  std::optional<double> rate_s1_analytic;
  std::optional<double> rate_s2_analytic;
  std::optional<double> rate_total_analytic;
  std::optional<double> rate_high_snr;
  std::optional<double> rate_mc;
  std::optional<double> rate_mc_stderr;
  std::optional<double> outage_analytic;
  std::optional<double> outage_mc;
  std::optional<double> outage_mc_stderr;
  std::optional<std::uint64_t> trials;
};

struct SweepOptions {
  bool optimize_a2 = false;  // per-point closed-form outage minimization over the default grid
  SimOptions sim;
};

/// Evaluates `metric` at every ρ (dB) of a strictly increasing grid.
/// n_trials == 0 skips Monte Carlo. Every point reuses `seed`, so the
/// rows match the single-point operations exactly.
std::vector<SweepRow> run_sweep(const SystemConfig& cfg, std::span<const double> rho_grid_db,
                                Scheme scheme, Metric metric, std::uint64_t n_trials,
                                std::uint64_t seed, const SweepOptions& opts = {});

double db_to_linear(double db) noexcept;

}  // namespace crsnoma

#endif  // CRSNOMA_SIMULATOR_HPP_
