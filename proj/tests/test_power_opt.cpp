#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "crsnoma/outage.hpp"
#include "crsnoma/power_opt.hpp"
#include "doctest.h"

using namespace crsnoma;

namespace {

SystemConfig paper_config(Combiner c = Combiner::kSc) {
  SystemConfig cfg;
  cfg.sr = {2, 10.0};
  cfg.sd = {2, 1.0};
  cfg.rd = {2, 2.5};
  cfg.n_r = 2;
  cfg.n_d = 2;
  cfg.combiner = c;
  return cfg;
}

double db(double value) { return std::pow(10.0, value / 10.0); }

std::size_t argmin_delta(const std::vector<FactorTraceRow>& rows, double FactorTraceRow::*field) {
  return static_cast<std::size_t>(
      std::min_element(rows.begin(), rows.end(),
                       [&](const auto& a, const auto& b) { return a.*field < b.*field; }) -
      rows.begin());
}

}  // namespace

TEST_CASE("default grid") {
  const auto grid = default_a2_grid();
  REQUIRE(grid.size() == 24);
  CHECK(grid.front() == 0.01);
  CHECK(grid.back() == 0.24);
}

TEST_CASE("optimal a2 at 2 dB is 0.09") {
  const auto grid = default_a2_grid();
  const auto result = optimal_a2(paper_config(), db(2.0), grid);
  CHECK(result.a2_star == 0.09);
  CHECK(result.per_point.size() == grid.size());
  double best = 1.0;
  for (const auto& [a2, p] : result.per_point) best = std::min(best, p);
  CHECK(result.outage_at_star == best);
}

TEST_CASE("optimal a2 stays in [0.08, 0.10]") {
  const auto grid = default_a2_grid();
  for (Combiner c : {Combiner::kSc, Combiner::kMrc}) {
    for (double d = 0.0; d <= 30.0; d += 2.0) {
      CAPTURE(d);
      const double a2 = optimal_a2(paper_config(c), db(d), grid).a2_star;
      CHECK(a2 >= 0.08 - 1e-12);
      CHECK(a2 <= 0.10 + 1e-12);
    }
  }
}

TEST_CASE("all-infeasible grid returns its smallest point") {
  const std::vector<double> grid{0.25, 0.3, 0.4};
  const auto result = optimal_a2(paper_config(), db(20.0), grid);
  CHECK(result.a2_star == 0.25);
  CHECK(result.outage_at_star == 1.0);
  for (const auto& [a2, p] : result.per_point) CHECK(p == 1.0);
}

TEST_CASE("grid validation") {
  const std::vector<double> empty;
  CHECK_THROWS_AS(optimal_a2(paper_config(), 10.0, empty), std::domain_error);
  const std::vector<double> bad{0.1, 0.5};
  CHECK_THROWS_AS(optimal_a2(paper_config(), 10.0, bad), std::domain_error);
  CHECK_THROWS_AS(ccdf_factor_trace(paper_config(), 10.0, bad), std::domain_error);
  CHECK_THROWS_AS(refined_a2_grid(0.1, 0.01, 0.0), std::domain_error);
}

TEST_CASE("factor trace") {
  const auto grid = default_a2_grid();
  for (double d : {2.0, 20.0}) {
    const auto rows = ccdf_factor_trace(paper_config(), db(d), grid);
    REQUIRE(rows.size() == grid.size());
    CHECK(rows[argmin_delta(rows, &FactorTraceRow::delta1)].a2 == 0.01);
    CHECK(rows[argmin_delta(rows, &FactorTraceRow::delta2)].a2 == 0.2);

    const auto best_product = std::max_element(rows.begin(), rows.end(), [](const auto& a, const auto& b) {
      return a.product < b.product;
    });
    CHECK(best_product->a2 == optimal_a2(paper_config(), db(d), grid).a2_star);
    for (const auto& row : rows) {
      CHECK(row.product == doctest::Approx(row.ccdf_sd * row.ccdf_sr));
      CHECK(row.outage == doctest::Approx(outage_closed([&] {
        auto cfg = paper_config();
        cfg.a2 = row.a2;
        return cfg;
      }(), db(d))));
    }
  }

  const std::vector<double> past_boundary{0.1, 0.3};
  const auto rows = ccdf_factor_trace(paper_config(), db(10.0), past_boundary);
  CHECK(std::isnan(rows[1].delta1));
  CHECK(rows[1].product == 0.0);
  CHECK(rows[1].outage == 1.0);
}

TEST_CASE("refinement is stable") {
  for (Combiner c : {Combiner::kSc, Combiner::kMrc}) {
    for (double d : {2.0, 20.0}) {
      const auto coarse = optimal_a2(paper_config(c), db(d), default_a2_grid());
      const auto fine = optimal_a2(paper_config(c), db(d), refined_a2_grid(coarse.a2_star, 0.01, 0.005));
      CHECK(fine.outage_at_star <= coarse.outage_at_star);
      CHECK((coarse.outage_at_star - fine.outage_at_star) / coarse.outage_at_star < 0.01);
      const auto refined = optimal_a2_refined(paper_config(c), db(d));
      CHECK(refined.outage_at_star <= fine.outage_at_star);
    }
  }
  const auto near_zero = refined_a2_grid(0.005, 0.01, 0.001);
  CHECK(near_zero.front() > 0.0);
}

TEST_CASE("outage is flat in a2 at low SNR and sharp at high SNR") {
  const auto ratio = [](double d) {
    const auto result = optimal_a2(paper_config(), db(d), default_a2_grid());
    double hi = 0.0;
    for (const auto& [a2, p] : result.per_point) hi = std::max(hi, p);
    return hi / result.outage_at_star;
  };
  CHECK(ratio(2.0) < 1.5);
  CHECK(ratio(20.0) > 2.0);
}
