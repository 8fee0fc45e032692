#include <cmath>
#include <stdexcept>
#include <vector>

#include "crsnoma/outage.hpp"
#include "crsnoma/rate.hpp"
#include "crsnoma/simulator.hpp"
#include "doctest.h"

using namespace crsnoma;

namespace {

SystemConfig make_config(int m, int n, Combiner c, double a2) {
  SystemConfig cfg;
  cfg.sr = {m, 10.0};
  cfg.sd = {m, 1.0};
  cfg.rd = {m, 2.5};
  cfg.n_r = n;
  cfg.n_d = n;
  cfg.combiner = c;
  cfg.a2 = a2;
  return cfg;
}

constexpr std::uint64_t kSeed = 0x5eed;

}  // namespace

TEST_CASE("NOMA rate matches the closed form") {
  const auto cfg = make_config(1, 1, Combiner::kSc, 0.1);
  const double rho = db_to_linear(10.0);
  const auto mc = simulate_rate(cfg, rho, Scheme::kNoma, 1'000'000, kSeed);
  CHECK(mc.n_trials == 1'000'000);
  CHECK(mc.master_seed == kSeed);
  CHECK(mc.std_error > 0.0);
  CHECK(std::abs(mc.mean - rate_total(cfg, rho).rate_total) <= 4.0 * mc.std_error);

  const auto mrc = make_config(2, 2, Combiner::kMrc, 0.1);
  const auto mc2 = simulate_rate(mrc, rho, Scheme::kNoma, 1'000'000, kSeed);
  CHECK(std::abs(mc2.mean - rate_total(mrc, rho).rate_total) <= 4.0 * mc2.std_error);
}

TEST_CASE("outage matches the closed form") {
  const auto cfg = make_config(1, 1, Combiner::kSc, 0.1);
  const auto mc = simulate_outage(cfg, 10.0, 1'000'000, kSeed);
  CHECK(std::abs(mc.mean - 0.6015) <= 4.0 * mc.std_error + 5e-5);
  CHECK(std::abs(mc.mean - outage_closed(cfg, 10.0)) <= 4.0 * mc.std_error);
  CHECK(mc.std_error == doctest::Approx(std::sqrt(mc.mean * (1 - mc.mean) / 1e6)));
}

TEST_CASE("degenerate regimes") {
  auto infeasible = make_config(1, 1, Combiner::kSc, 0.3);
  const auto all_out = simulate_outage(infeasible, 1e6, 100'000, kSeed);
  CHECK(all_out.mean == 1.0);
  CHECK(all_out.std_error == 0.0);

  const auto none = simulate_outage(make_config(2, 2, Combiner::kSc, 0.1), 1e8, 1'000'000, kSeed);
  CHECK(none.mean == 0.0);

  const auto quiet = simulate_rate(make_config(1, 1, Combiner::kSc, 0.1), 1e-6, Scheme::kNoma, 100'000, kSeed);
  CHECK(quiet.mean <= 1e-4);
  const auto quiet_oma = simulate_rate(make_config(1, 1, Combiner::kSc, 0.1), 1e-6, Scheme::kOma, 100'000, kSeed);
  CHECK(quiet_oma.mean <= 1e-4);
}

TEST_CASE("argument checks") {
  const auto cfg = make_config(1, 1, Combiner::kSc, 0.1);
  CHECK_THROWS_AS(simulate_rate(cfg, 10.0, Scheme::kNoma, 0, kSeed), std::domain_error);
  CHECK_THROWS_AS(simulate_outage(cfg, 10.0, 0, kSeed), std::domain_error);
  CHECK_THROWS_AS(simulate_rate(cfg, 0.0, Scheme::kNoma, 10, kSeed), std::domain_error);
  auto bad = cfg;
  bad.a2 = 0.7;
  CHECK_THROWS_AS(simulate_outage(bad, 10.0, 10, kSeed), std::invalid_argument);
}

TEST_CASE("results are bitwise independent of worker count") {
  const auto cfg = make_config(2, 2, Combiner::kMrc, 0.1);
  SimOptions serial{1 << 12, 1};
  SimOptions parallel{1 << 12, 3};
  const auto a = simulate_rate(cfg, 100.0, Scheme::kNoma, 50'000, kSeed, serial);
  const auto b = simulate_rate(cfg, 100.0, Scheme::kNoma, 50'000, kSeed, parallel);
  const auto c = simulate_rate(cfg, 100.0, Scheme::kNoma, 50'000, kSeed, serial);
  CHECK(a.mean == b.mean);
  CHECK(a.std_error == b.std_error);
  CHECK(a.mean == c.mean);

  const auto oa = simulate_outage(cfg, 10.0, 50'000, kSeed, serial);
  const auto ob = simulate_outage(cfg, 10.0, 50'000, kSeed, parallel);
  CHECK(oa.mean == ob.mean);

  const auto other = simulate_rate(cfg, 100.0, Scheme::kNoma, 50'000, kSeed + 1, serial);
  CHECK(other.mean != a.mean);
}

TEST_CASE("OMA rate") {
  // Single-antenna Rayleigh: MC mean should exceed NOMA at low SNR.
  const auto cfg = make_config(1, 1, Combiner::kSc, 0.1);
  const auto oma = simulate_rate(cfg, 1.0, Scheme::kOma, 200'000, kSeed);
  const auto noma = simulate_rate(cfg, 1.0, Scheme::kNoma, 200'000, kSeed);
  CHECK(oma.mean > noma.mean);
  CHECK(to_string(Scheme::kOma) == "oma");
  CHECK(to_string(Scheme::kNoma) == "noma");
}

TEST_CASE("sweeps") {
  const auto cfg = make_config(1, 1, Combiner::kSc, 0.1);
  const std::vector<double> single{10.0};
  const auto rows = run_sweep(cfg, single, Scheme::kNoma, Metric::kRate, 20'000, kSeed);
  REQUIRE(rows.size() == 1);
  const auto direct = simulate_rate(cfg, 10.0, Scheme::kNoma, 20'000, kSeed);
  CHECK(*rows[0].rate_mc == direct.mean);
  CHECK(*rows[0].rate_mc_stderr == direct.std_error);
  CHECK(*rows[0].rate_total_analytic == rate_total(cfg, 10.0).rate_total);
  CHECK(*rows[0].trials == 20'000);
  CHECK_FALSE(rows[0].outage_analytic.has_value());

  const std::vector<double> grid{0.0, 10.0, 20.0};
  const auto oma = run_sweep(cfg, grid, Scheme::kOma, Metric::kRate, 5'000, kSeed);
  REQUIRE(oma.size() == 3);
  for (const auto& row : oma) {
    CHECK_FALSE(row.rate_total_analytic.has_value());
    CHECK_FALSE(row.rate_high_snr.has_value());
    CHECK(row.rate_mc.has_value());
  }

  const auto analytic = run_sweep(cfg, grid, Scheme::kNoma, Metric::kOutage, 0, kSeed);
  for (const auto& row : analytic) {
    CHECK(row.outage_analytic.has_value());
    CHECK_FALSE(row.outage_mc.has_value());
    CHECK_FALSE(row.trials.has_value());
  }

  SweepOptions opt;
  opt.optimize_a2 = true;
  const auto tuned = run_sweep(make_config(2, 2, Combiner::kSc, 0.2), std::vector<double>{2.0},
                               Scheme::kNoma, Metric::kOutage, 0, kSeed, opt);
  CHECK(tuned[0].config.a2 == 0.09);

  const std::vector<double> empty;
  CHECK_THROWS_AS(run_sweep(cfg, empty, Scheme::kNoma, Metric::kRate, 10, kSeed), std::domain_error);
  const std::vector<double> decreasing{10.0, 0.0};
  CHECK_THROWS_AS(run_sweep(cfg, decreasing, Scheme::kNoma, Metric::kRate, 10, kSeed), std::domain_error);
  CHECK_THROWS_AS(run_sweep(cfg, grid, Scheme::kOma, Metric::kOutage, 10, kSeed), std::invalid_argument);
}
