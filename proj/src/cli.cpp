#include "crsnoma/cli.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "crsnoma/csv.hpp"
#include "crsnoma/errors.hpp"
#include "crsnoma/outage.hpp"
#include "crsnoma/power_opt.hpp"
#include "crsnoma/rate.hpp"

namespace crsnoma::cli {

namespace {

constexpr double kRateCheckTolerance = 1e-7;
constexpr double kSigmaBound = 4.0;

struct Grid {
  double start, stop, step;
};

constexpr Grid kRateGrid{0.0, 30.0, 2.0};
constexpr Grid kOutageGrid{0.0, 40.0, 2.5};
// Figures 7 and 8 need the 30-40 dB region.
constexpr Grid kWideRateGrid{0.0, 40.0, 2.0};

SystemConfig preset_config(int m, int n, Combiner combiner) {
  SystemConfig cfg;
  cfg.sr.m = cfg.sd.m = cfg.rd.m = m;
  cfg.n_r = cfg.n_d = n;
  cfg.combiner = combiner;
  return cfg;
}

std::vector<double> grid_points(const Grid& g) { return rho_grid(g.start, g.stop, g.step); }

csv::Table sweep_table(std::uint64_t seed) {
  csv::Table table;
  table.comment = csv::banner(seed);
  table.columns = csv::sweep_columns();
  return table;
}

void append_rows(csv::Table& table, const std::vector<SweepRow>& rows) {
  for (const auto& row : rows) table.rows.push_back(csv::sweep_cells(csv::make_record(row)));
}

SweepOptions sweep_options(bool optimize, unsigned workers) {
  SweepOptions opts;
  opts.optimize_a2 = optimize;
  opts.sim.workers = workers;
  return opts;
}

std::vector<SweepRow> noma_oma_difference(const std::vector<SweepRow>& noma,
                                          const std::vector<SweepRow>& oma) {
  std::vector<SweepRow> diff;
  for (std::size_t i = 0; i < noma.size(); ++i) {
    SweepRow row;
    row.rho_db = noma[i].rho_db;
    row.config = noma[i].config;
    if (noma[i].rate_mc && oma[i].rate_mc) row.rate_mc = *noma[i].rate_mc - *oma[i].rate_mc;
    row.trials = noma[i].trials;
    diff.push_back(row);
  }
  return diff;
}

csv::Table factor_trace_table(double rho_db, std::uint64_t seed) {
  csv::Table table;
  table.comment = csv::banner(seed) + ", rho_db=" + csv::format_double(rho_db);
  table.columns = {"a2", "delta1", "delta2", "ccdf_sd", "ccdf_sr", "product", "outage"};
  const auto grid = default_a2_grid();
  for (const auto& r : ccdf_factor_trace(preset_config(2, 2, Combiner::kSc), db_to_linear(rho_db), grid)) {
    table.rows.push_back({csv::format_double(r.a2), csv::format_double(r.delta1),
                          csv::format_double(r.delta2), csv::format_double(r.ccdf_sd),
                          csv::format_double(r.ccdf_sr), csv::format_double(r.product),
                          csv::format_double(r.outage)});
  }
  return table;
}

csv::Table run_figure(const RunSpec& spec, std::ostream& log) {
  const std::string& name = spec.figure;
  if (name == "fig3") return factor_trace_table(2.0, spec.seed);
  if (name == "fig4") return factor_trace_table(20.0, spec.seed);

  csv::Table table = sweep_table(spec.seed);
  const auto tuned = sweep_options(true, spec.workers);
  const auto plain = sweep_options(false, spec.workers);
  const auto note = [&](const SystemConfig& cfg) {
    log << name << ": " << to_string(cfg.combiner) << " m=" << cfg.sr.m << " N=" << cfg.n_r << '\n';
  };

  for (Combiner combiner : {Combiner::kSc, Combiner::kMrc}) {
    if (name == "fig2") {
      const auto grid = grid_points(kOutageGrid);
      for (int n : {1, 2}) {
        for (int m : {1, 2}) {
          const auto cfg = preset_config(m, n, combiner);
          note(cfg);
          append_rows(table, run_sweep(cfg, grid, Scheme::kNoma, Metric::kOutage, spec.trials, spec.seed, tuned));
        }
      }
    } else if (name == "fig5" || name == "fig6") {
      const auto grid = grid_points(kRateGrid);
      std::vector<SystemConfig> configs;
      if (name == "fig5") {
        for (int n : {1, 2}) configs.push_back(preset_config(2, n, combiner));
      } else {
        for (int m : {1, 2, 3}) configs.push_back(preset_config(m, 2, combiner));
      }
      for (const auto& cfg : configs) {
        note(cfg);
        append_rows(table, run_sweep(cfg, grid, Scheme::kNoma, Metric::kRate, spec.trials, spec.seed, tuned));
        append_rows(table, run_sweep(cfg, grid, Scheme::kOma, Metric::kRate, spec.trials, spec.seed, plain));
      }
    } else if (name == "fig7") {
      const auto grid = grid_points(kWideRateGrid);
      for (int n : {1, 2}) {
        const auto cfg = preset_config(2, n, combiner);
        note(cfg);
        const auto noma = run_sweep(cfg, grid, Scheme::kNoma, Metric::kRate, spec.trials, spec.seed, tuned);
        const auto oma = run_sweep(cfg, grid, Scheme::kOma, Metric::kRate, spec.trials, spec.seed, plain);
        append_rows(table, noma);
        append_rows(table, oma);
        for (const auto& row : noma_oma_difference(noma, oma)) {
          table.rows.push_back(csv::sweep_cells({"noma-oma", row}));
        }
      }
    } else if (name == "fig8") {
      const auto grid = grid_points(kWideRateGrid);
      for (int n : {1, 2}) {
        auto cfg = preset_config(2, n, combiner);
        cfg.a2 = 0.1;
        note(cfg);
        append_rows(table, run_sweep(cfg, grid, Scheme::kNoma, Metric::kRate, spec.trials, spec.seed, plain));
      }
    }
  }
  return table;
}

csv::Table run_optimize(const RunSpec& spec) {
  csv::Table table;
  table.comment = csv::banner(spec.seed);
  table.columns = {"rho_db", "combiner", "m_sr", "m_sd", "m_rd", "n_r", "n_d", "a2_star", "outage_at_star"};
  const SystemConfig& c = spec.config;
  const auto grid = default_a2_grid();
  for (double rho_db : rho_grid(spec.rho_start_db, spec.rho_stop_db, spec.rho_step_db)) {
    const double rho = db_to_linear(rho_db);
    const auto best = spec.refine ? optimal_a2_refined(c, rho) : optimal_a2(c, rho, grid);
    table.rows.push_back({csv::format_double(rho_db), std::string(to_string(c.combiner)),
                          std::to_string(c.sr.m), std::to_string(c.sd.m), std::to_string(c.rd.m),
                          std::to_string(c.n_r), std::to_string(c.n_d),
                          csv::format_double(best.a2_star), csv::format_double(best.outage_at_star)});
  }
  return table;
}

// Analytic-vs-MC (4 standard errors) and closed-form-vs-quadrature checks
// at every grid point. The outage bound uses the larger of the observed
// and the analytic binomial standard error so zero-event points are judged
// against the predicted spread.
csv::Table run_validate(const RunSpec& spec, std::ostream& log, int& failures) {
  csv::Table table = sweep_table(spec.seed);
  const auto grid = rho_grid(spec.rho_start_db, spec.rho_stop_db, spec.rho_step_db);
  const auto opts = sweep_options(!spec.a2_fixed, spec.workers);
  auto rows = run_sweep(spec.config, grid, Scheme::kNoma, Metric::kRate, spec.trials, spec.seed, opts);
  const auto outage = run_sweep(spec.config, grid, Scheme::kNoma, Metric::kOutage, spec.trials, spec.seed, opts);

  failures = 0;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    SweepRow& row = rows[i];
    row.outage_analytic = outage[i].outage_analytic;
    row.outage_mc = outage[i].outage_mc;
    row.outage_mc_stderr = outage[i].outage_mc_stderr;

    const double rho = db_to_linear(row.rho_db);
    const auto oracle = rate_quadrature_oracle(row.config, rho);
    const double quad_gap = std::abs(oracle.rate_total - *row.rate_total_analytic);
    if (quad_gap > kRateCheckTolerance) {
      ++failures;
      log << "FAIL rho_db=" << row.rho_db << " closed form vs quadrature gap " << quad_gap << '\n';
    }
    if (spec.trials == 0) continue;

    const double rate_gap = std::abs(*row.rate_mc - *row.rate_total_analytic);
    if (rate_gap > kSigmaBound * *row.rate_mc_stderr) {
      ++failures;
      log << "FAIL rho_db=" << row.rho_db << " rate gap " << rate_gap << " > 4 x " << *row.rate_mc_stderr << '\n';
    }
    const double p = *row.outage_analytic;
    const double sigma = std::max(*row.outage_mc_stderr, std::sqrt(p * (1.0 - p) / static_cast<double>(spec.trials)));
    const double outage_gap = std::abs(*row.outage_mc - p);
    if (outage_gap > kSigmaBound * sigma) {
      ++failures;
      log << "FAIL rho_db=" << row.rho_db << " outage gap " << outage_gap << " > 4 x " << sigma << '\n';
    }
  }
  append_rows(table, rows);
  log << "validate: " << rows.size() << " points, " << failures << " failed checks\n";
  return table;
}

Command command_from(const std::string& name) {
  if (name == "rate-sweep") return Command::kRateSweep;
  if (name == "outage-sweep") return Command::kOutageSweep;
  if (name == "optimize-a2") return Command::kOptimizeA2;
  if (name == "validate") return Command::kValidate;
  return Command::kFigure;
}

}  // namespace

const std::vector<std::string>& figure_names() {
  static const std::vector<std::string> names{"fig2", "fig3", "fig4", "fig5", "fig6", "fig7", "fig8"};
  return names;
}

std::vector<double> rho_grid(double start_db, double stop_db, double step_db) {
  if (!(step_db > 0.0)) throw std::invalid_argument("rho step must be positive");
  if (!(start_db <= stop_db)) throw std::invalid_argument("rho start must not exceed rho stop");
  std::vector<double> grid;
  const double slack = 1e-9 * step_db;
  for (long k = 0;; ++k) {
    const double value = start_db + static_cast<double>(k) * step_db;
    if (value > stop_db + slack) break;
    grid.push_back(std::round(value * 1e9) / 1e9);
  }
  return grid;
}

RunSpec parse_and_validate(const std::vector<std::string>& args) {
  CLI::App app{"Ergodic rate and outage analysis for NOMA cooperative relaying", "crs-noma-lab"};
  app.require_subcommand(1);

  int m_all = 1;
  int m_sr = 1, m_sd = 1, m_rd = 1;
  int n_all = 1, n_r = 1, n_d = 1;
  SystemConfig defaults;
  double omega_sr = defaults.sr.omega, omega_sd = defaults.sd.omega, omega_rd = defaults.rd.omega;
  std::string combiner = "sc";
  std::string scheme = "noma";
  std::string a2 = "opt";
  double rate_r = defaults.target_rate;
  double rho_start = 0.0, rho_stop = 0.0, rho_step = 0.0;
  RunSpec spec;
  std::string figure;

  CLI::Option* opt_m_sr = app.add_option("--m-sr", m_sr, "Nakagami shape of the s-r link");
  CLI::Option* opt_m_sd = app.add_option("--m-sd", m_sd, "Nakagami shape of the s-d link");
  CLI::Option* opt_m_rd = app.add_option("--m-rd", m_rd, "Nakagami shape of the r-d link");
  app.add_option("--m", m_all, "Nakagami shape of every link");
  CLI::Option* opt_n_r = app.add_option("--n-r", n_r, "receive antennas at the relay");
  CLI::Option* opt_n_d = app.add_option("--n-d", n_d, "receive antennas at the destination");
  app.add_option("--n", n_all, "receive antennas at relay and destination");
  app.add_option("--omega-sr", omega_sr, "mean gain of the s-r link")->capture_default_str();
  app.add_option("--omega-sd", omega_sd, "mean gain of the s-d link")->capture_default_str();
  app.add_option("--omega-rd", omega_rd, "mean gain of the r-d link")->capture_default_str();
  app.add_option("--combiner", combiner, "receive combining")->check(CLI::IsMember({"sc", "mrc"}))->capture_default_str();
  app.add_option("--scheme", scheme, "access scheme")->check(CLI::IsMember({"noma", "oma"}))->capture_default_str();
  app.add_option("--rate-r", rate_r, "target rate R in bps/Hz")->capture_default_str();
  app.add_option("--a2", a2, "weak-symbol power share, or 'opt' for the per-point optimum")->capture_default_str();
  CLI::Option* opt_start = app.add_option("--rho-start-db", rho_start, "first SNR point (dB)");
  CLI::Option* opt_stop = app.add_option("--rho-stop-db", rho_stop, "last SNR point (dB)");
  CLI::Option* opt_step = app.add_option("--rho-step-db", rho_step, "SNR step (dB)");
  app.add_option("--trials", spec.trials, "Monte Carlo trials per point; 0 skips simulation")->capture_default_str();
  app.add_option("--seed", spec.seed, "master seed")->capture_default_str();
  app.add_option("--workers", spec.workers, "simulation threads; 0 uses every core")->capture_default_str();
  app.add_option("--out", spec.out_path, "output CSV path (default: standard output)");
  app.add_flag("--refine", spec.refine, "optimize-a2: add a 0.001-step pass around the grid optimum");

  app.add_subcommand("rate-sweep", "ergodic rate versus SNR")->fallthrough();
  app.add_subcommand("outage-sweep", "outage probability versus SNR")->fallthrough();
  app.add_subcommand("optimize-a2", "outage-optimal a2 versus SNR")->fallthrough();
  app.add_subcommand("validate", "check closed forms against quadrature and Monte Carlo")->fallthrough();
  CLI::App* fig = app.add_subcommand("figure", "reproduce a figure preset")->fallthrough();
  fig->add_option("name", figure, "preset name")->required()->check(CLI::IsMember(figure_names()));

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    throw UsageError(app.help(), exit_code::kOk);
  } catch (const CLI::CallForAllHelp&) {
    throw UsageError(app.help("", CLI::AppFormatMode::All), exit_code::kOk);
  } catch (const CLI::ParseError& e) {
    throw UsageError(e.what());
  }

  spec.command = command_from(app.get_subcommands().front()->get_name());
  spec.figure = figure;

  SystemConfig& cfg = spec.config;
  cfg.sr = {opt_m_sr->count() ? m_sr : m_all, omega_sr};
  cfg.sd = {opt_m_sd->count() ? m_sd : m_all, omega_sd};
  cfg.rd = {opt_m_rd->count() ? m_rd : m_all, omega_rd};
  cfg.n_r = opt_n_r->count() ? n_r : n_all;
  cfg.n_d = opt_n_d->count() ? n_d : n_all;
  cfg.combiner = combiner == "mrc" ? Combiner::kMrc : Combiner::kSc;
  cfg.target_rate = rate_r;
  spec.scheme = scheme == "oma" ? Scheme::kOma : Scheme::kNoma;

  if (a2 != "opt") {
    try {
      std::size_t used = 0;
      const double value = std::stod(a2, &used);
      if (used != a2.size()) throw std::invalid_argument(a2);
      spec.a2_fixed = value;
      cfg.a2 = value;
    } catch (const std::logic_error&) {
      throw UsageError("--a2 expects a number or 'opt', got '" + a2 + "'");
    }
  }
  try {
    spec.warnings = cfg.validate();
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }

  const bool outage_command =
      spec.command == Command::kOutageSweep || spec.command == Command::kOptimizeA2;
  const Grid& fallback = outage_command ? kOutageGrid : kRateGrid;
  spec.rho_start_db = opt_start->count() ? rho_start : fallback.start;
  spec.rho_stop_db = opt_stop->count() ? rho_stop : fallback.stop;
  spec.rho_step_db = opt_step->count() ? rho_step : fallback.step;
  if (!(spec.rho_step_db > 0.0)) throw UsageError("--rho-step-db must be positive");
  if (!(spec.rho_start_db <= spec.rho_stop_db)) {
    throw UsageError("--rho-start-db must not exceed --rho-stop-db");
  }
  if (!std::isfinite(spec.rho_start_db) || !std::isfinite(spec.rho_stop_db)) {
    throw UsageError("SNR bounds must be finite");
  }
  if (spec.command == Command::kOutageSweep && spec.scheme == Scheme::kOma) {
    throw UsageError("outage-sweep supports --scheme noma only");
  }
  return spec;
}

int execute(const RunSpec& spec, std::ostream& out, std::ostream& log) {
  for (const auto& warning : spec.warnings) log << "warning: " << warning << '\n';

  csv::Table table;
  int failures = 0;
  try {
    switch (spec.command) {
      case Command::kRateSweep:
      case Command::kOutageSweep: {
        const Metric metric = spec.command == Command::kRateSweep ? Metric::kRate : Metric::kOutage;
        const bool optimize = !spec.a2_fixed && spec.scheme == Scheme::kNoma;
        table = sweep_table(spec.seed);
        append_rows(table, run_sweep(spec.config, rho_grid(spec.rho_start_db, spec.rho_stop_db, spec.rho_step_db),
                                     spec.scheme, metric, spec.trials, spec.seed,
                                     sweep_options(optimize, spec.workers)));
        break;
      }
      case Command::kOptimizeA2:
        table = run_optimize(spec);
        break;
      case Command::kValidate:
        table = run_validate(spec, log, failures);
        break;
      case Command::kFigure:
        table = run_figure(spec, log);
        break;
    }
  } catch (const NumericalFailure& e) {
    log << "numerical failure at rho_db=" << 10.0 * std::log10(e.rho()) << ", term " << e.term()
        << ": " << e.what() << '\n';
    return exit_code::kNumerical;
  } catch (const std::invalid_argument& e) {
    log << "error: " << e.what() << '\n';
    return exit_code::kUsage;
  } catch (const std::domain_error& e) {
    log << "error: " << e.what() << '\n';
    return exit_code::kUsage;
  }

  if (spec.out_path.empty()) {
    csv::write_table(out, table);
    out.flush();
    if (!out) {
      log << "error: failed writing output\n";
      return exit_code::kIo;
    }
  } else {
    std::ofstream file(spec.out_path);
    if (!file) {
      log << "error: cannot open " << spec.out_path << " for writing\n";
      return exit_code::kIo;
    }
    csv::write_table(file, table);
    file.close();
    if (!file) {
      log << "error: failed writing " << spec.out_path << '\n';
      return exit_code::kIo;
    }
  }
  return failures == 0 ? exit_code::kOk : exit_code::kValidationFailed;
}

}  // namespace crsnoma::cli
