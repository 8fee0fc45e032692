#include "crsnoma/simulator.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <thread>

#include "crsnoma/outage.hpp"
#include "crsnoma/power_opt.hpp"
#include "crsnoma/rate.hpp"

namespace crsnoma {

namespace {

// Welford accumulator; merged with Chan's pairwise update.
struct MomentStats {
  std::uint64_t count = 0;
  double mean = 0.0;
  double m2 = 0.0;

  void add(double x) noexcept {
    ++count;
    const double delta = x - mean;
    mean += delta / static_cast<double>(count);
    m2 += delta * (x - mean);
  }

  void merge(const MomentStats& other) noexcept {
    if (other.count == 0) return;
    const double n_a = static_cast<double>(count);
    const double n_b = static_cast<double>(other.count);
    const double n = n_a + n_b;
    const double delta = other.mean - mean;
    mean += delta * n_b / n;
    m2 += other.m2 + delta * delta * n_a * n_b / n;
    count += other.count;
  }
};

template <class Stats, class ChunkFn>
std::vector<Stats> run_chunks(std::uint64_t n_trials, std::uint64_t seed, const SimOptions& opts,
                              const ChunkFn& chunk_fn) {
  const std::uint64_t chunk = std::max<std::uint64_t>(opts.chunk_size, 1);
  const std::uint64_t n_chunks = (n_trials + chunk - 1) / chunk;
  std::vector<Stats> results(n_chunks);

  const auto run_one = [&](std::uint64_t k) {
    RandomStream rng = RandomStream::substream(seed, k);
    const std::uint64_t count = std::min(chunk, n_trials - k * chunk);
    results[k] = chunk_fn(rng, count);
  };

  unsigned workers = opts.workers != 0 ? opts.workers : std::thread::hardware_concurrency();
  workers = static_cast<unsigned>(std::min<std::uint64_t>(std::max(workers, 1u), n_chunks));
  if (workers <= 1) {
    for (std::uint64_t k = 0; k < n_chunks; ++k) run_one(k);
    return results;
  }

  std::atomic<std::uint64_t> next{0};
  std::vector<std::jthread> pool;
  pool.reserve(workers);
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (std::uint64_t k = next++; k < n_chunks; k = next++) run_one(k);
    });
  }
  pool.clear();
  return results;
}

void check_trials(std::uint64_t n_trials) {
  if (n_trials == 0) throw std::domain_error("n_trials must be >= 1");
}

struct Gains {
  double sr, sd, rd;
};

Gains draw_gains(const SystemConfig& cfg, RandomStream& rng) {
  Gains g{};
  g.sr = sample_gain(cfg.sr, cfg.n_r, cfg.combiner, rng);
  g.sd = sample_gain(cfg.sd, cfg.n_d, cfg.combiner, rng);
  g.rd = sample_gain(cfg.rd, cfg.n_d, cfg.combiner, rng);
  return g;
}

}  // namespace

std::string_view to_string(Scheme scheme) noexcept {
  return scheme == Scheme::kNoma ? "noma" : "oma";
}

std::string_view to_string(Metric metric) noexcept {
  return metric == Metric::kRate ? "rate" : "outage";
}

double db_to_linear(double db) noexcept { return std::pow(10.0, db / 10.0); }

McEstimate simulate_rate(const SystemConfig& cfg, double rho, Scheme scheme,
                         std::uint64_t n_trials, std::uint64_t seed, const SimOptions& opts) {
  check_trials(n_trials);
  cfg.validate();
  if (!(rho > 0.0)) throw std::domain_error("simulate_rate: rho must be positive");

  const double half_inv_ln2 = 0.5 / std::numbers::ln2;
  const double a1_rho = cfg.a1() * rho;
  const double a2_rho = cfg.a2 * rho;
  const double a2 = cfg.a2;

  const auto chunk_fn = [&](RandomStream& rng, std::uint64_t count) {
    MomentStats stats;
    for (std::uint64_t i = 0; i < count; ++i) {
      const Gains g = draw_gains(cfg, rng);
      double rate;
      if (scheme == Scheme::kNoma) {
        const double x = std::min(g.sr, g.sd);
        const double y = std::min(a2 * g.sr, g.rd);
        rate = half_inv_ln2 * (std::log1p(a1_rho * x / (a2_rho * x + 1.0)) + std::log1p(rho * y));
      } else {
        rate = half_inv_ln2 * std::log1p(rho * std::min(g.sr, g.sd + g.rd));
      }
      stats.add(rate);
    }
    return stats;
  };

  MomentStats total;
  for (const auto& s : run_chunks<MomentStats>(n_trials, seed, opts, chunk_fn)) total.merge(s);

  McEstimate est;
  est.mean = total.mean;
  est.n_trials = n_trials;
  est.master_seed = seed;
  est.std_error = n_trials > 1 ? std::sqrt(total.m2 / static_cast<double>(n_trials - 1) /
                                           static_cast<double>(n_trials))
                               : 0.0;
  return est;
}

McEstimate simulate_outage(const SystemConfig& cfg, double rho, std::uint64_t n_trials,
                           std::uint64_t seed, const SimOptions& opts) {
  check_trials(n_trials);
  cfg.validate();
  if (!(rho > 0.0)) throw std::domain_error("simulate_outage: rho must be positive");

  const double theta = std::exp2(2.0 * cfg.target_rate) - 1.0;
  const double a1_rho = cfg.a1() * rho;
  const double a2_rho = cfg.a2 * rho;
  const auto sinr_s1 = [&](double g) { return g * a1_rho / (g * a2_rho + 1.0); };

  const auto chunk_fn = [&](RandomStream& rng, std::uint64_t count) {
    std::uint64_t outages = 0;
    for (std::uint64_t i = 0; i < count; ++i) {
      const Gains g = draw_gains(cfg, rng);
      const bool decoded = sinr_s1(g.sd) >= theta && sinr_s1(g.sr) >= theta &&
                           g.sr * a2_rho >= theta && g.rd * rho >= theta;
      if (!decoded) ++outages;
    }
    return outages;
  };

  std::uint64_t outages = 0;
  for (auto c : run_chunks<std::uint64_t>(n_trials, seed, opts, chunk_fn)) outages += c;

  McEstimate est;
  const double n = static_cast<double>(n_trials);
  est.mean = static_cast<double>(outages) / n;
  est.std_error = std::sqrt(est.mean * (1.0 - est.mean) / n);
  est.n_trials = n_trials;
  est.master_seed = seed;
  return est;
}

std::vector<SweepRow> run_sweep(const SystemConfig& cfg, std::span<const double> rho_grid_db,
                                Scheme scheme, Metric metric, std::uint64_t n_trials,
                                std::uint64_t seed, const SweepOptions& opts) {
  if (rho_grid_db.empty()) throw std::domain_error("run_sweep: empty rho grid");
  for (std::size_t i = 1; i < rho_grid_db.size(); ++i) {
    if (!(rho_grid_db[i] > rho_grid_db[i - 1])) {
      throw std::domain_error("run_sweep: rho grid must be strictly increasing");
    }
  }
  if (metric == Metric::kOutage && scheme == Scheme::kOma) {
    throw std::invalid_argument("run_sweep: outage is defined for the NOMA scheme only");
  }

  const auto a2_grid = default_a2_grid();
  std::vector<SweepRow> rows;
  rows.reserve(rho_grid_db.size());
  for (double rho_db : rho_grid_db) {
    const double rho = db_to_linear(rho_db);
    SweepRow row;
    row.rho_db = rho_db;
    row.scheme = scheme;
    row.config = cfg;
    if (opts.optimize_a2) row.config.a2 = optimal_a2(cfg, rho, a2_grid).a2_star;
    const SystemConfig& point = row.config;

    if (metric == Metric::kRate) {
      if (scheme == Scheme::kNoma) {
        const auto exact = rate_total(point, rho);
        row.rate_s1_analytic = exact.rate_s1;
        row.rate_s2_analytic = exact.rate_s2;
        row.rate_total_analytic = exact.rate_total;
        row.rate_high_snr = rate_high_snr(point, rho).rate_total;
      }
      if (n_trials > 0) {
        const auto mc = simulate_rate(point, rho, scheme, n_trials, seed, opts.sim);
        row.rate_mc = mc.mean;
        row.rate_mc_stderr = mc.std_error;
      }
    } else {
      row.outage_analytic = outage_closed(point, rho);
      if (n_trials > 0) {
        const auto mc = simulate_outage(point, rho, n_trials, seed, opts.sim);
        row.outage_mc = mc.mean;
        row.outage_mc_stderr = mc.std_error;
      }
    }
    if (n_trials > 0) row.trials = n_trials;
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace crsnoma
