#include "crsnoma/csv.hpp"

#include <charconv>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace crsnoma::csv {

namespace {

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> cells;
  std::string cell;
  std::istringstream stream(line);
  while (std::getline(stream, cell, ',')) cells.push_back(cell);
  if (!line.empty() && line.back() == ',') cells.emplace_back();
  return cells;
}

void write_line(std::ostream& out, const std::vector<std::string>& cells) {
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i) out << ',';
    out << cells[i];
  }
  out << '\n';
}

std::string cell(const std::optional<double>& value) {
  return value ? format_double(*value) : std::string();
}

double parse_double(const std::string& text) {
  std::size_t used = 0;
  const double value = std::stod(text, &used);
  if (used != text.size()) throw std::runtime_error("bad number: " + text);
  return value;
}

template <class Int>
Int parse_int(const std::string& text) {
  Int value{};
  const auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || end != text.data() + text.size()) {
    throw std::runtime_error("bad integer: " + text);
  }
  return value;
}

std::optional<double> optional_double(const std::string& text) {
  if (text.empty()) return std::nullopt;
  return parse_double(text);
}

}  // namespace

std::string banner(std::uint64_t seed) {
  return "crs-noma-lab v" + std::string(kToolVersion) + ", seed=" + std::to_string(seed);
}

std::string format_double(double value) {
  char buffer[32];
  std::snprintf(buffer, sizeof buffer, "%.17g", value);
  return buffer;
}

void write_table(std::ostream& out, const Table& table) {
  out << "# " << table.comment << '\n';
  write_line(out, table.columns);
  for (const auto& row : table.rows) write_line(out, row);
}

Table read_table(std::istream& in) {
  Table table;
  std::string line;
  bool have_header = false;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    if (line.rfind("# ", 0) == 0) {
      if (table.comment.empty()) table.comment = line.substr(2);
      continue;
    }
    auto cells = split(line);
    if (!have_header) {
      table.columns = std::move(cells);
      have_header = true;
      continue;
    }
    if (cells.size() != table.columns.size()) {
      throw std::runtime_error("row has " + std::to_string(cells.size()) + " cells, expected " +
                               std::to_string(table.columns.size()));
    }
    table.rows.push_back(std::move(cells));
  }
  if (!have_header) throw std::runtime_error("missing CSV header");
  return table;
}

const std::vector<std::string>& sweep_columns() {
  static const std::vector<std::string> columns{
      "rho_db",           "scheme",           "combiner",         "m_sr",
      "m_sd",             "m_rd",             "n_r",              "n_d",
      "a2",               "rate_s1_analytic", "rate_s2_analytic", "rate_total_analytic",
      "rate_high_snr",    "rate_mc",          "rate_mc_stderr",   "outage_analytic",
      "outage_mc",        "outage_mc_stderr", "trials"};
  return columns;
}

SweepRecord make_record(const SweepRow& row) {
  return {std::string(to_string(row.scheme)), row};
}

std::vector<std::string> sweep_cells(const SweepRecord& record) {
  const SweepRow& r = record.row;
  const SystemConfig& c = r.config;
  return {format_double(r.rho_db),
          record.scheme_label,
          std::string(to_string(c.combiner)),
          std::to_string(c.sr.m),
          std::to_string(c.sd.m),
          std::to_string(c.rd.m),
          std::to_string(c.n_r),
          std::to_string(c.n_d),
          format_double(c.a2),
          cell(r.rate_s1_analytic),
          cell(r.rate_s2_analytic),
          cell(r.rate_total_analytic),
          cell(r.rate_high_snr),
          cell(r.rate_mc),
          cell(r.rate_mc_stderr),
          cell(r.outage_analytic),
          cell(r.outage_mc),
          cell(r.outage_mc_stderr),
          r.trials ? std::to_string(*r.trials) : std::string()};
}

SweepRecord parse_sweep_cells(const std::vector<std::string>& columns,
                              const std::vector<std::string>& cells) {
  if (columns != sweep_columns()) throw std::runtime_error("not a sweep table");
  if (cells.size() != columns.size()) throw std::runtime_error("ragged sweep row");

  SweepRecord record;
  SweepRow& r = record.row;
  SystemConfig& c = r.config;
  r.rho_db = parse_double(cells[0]);
  record.scheme_label = cells[1];
  if (cells[1] == "oma") {
    r.scheme = Scheme::kOma;
  } else if (cells[1] != "noma" && cells[1] != "noma-oma") {
    throw std::runtime_error("unknown scheme: " + cells[1]);
  }
  if (cells[2] == "mrc") {
    c.combiner = Combiner::kMrc;
  } else if (cells[2] != "sc") {
    throw std::runtime_error("unknown combiner: " + cells[2]);
  }
  c.sr.m = parse_int<int>(cells[3]);
  c.sd.m = parse_int<int>(cells[4]);
  c.rd.m = parse_int<int>(cells[5]);
  c.n_r = parse_int<int>(cells[6]);
  c.n_d = parse_int<int>(cells[7]);
  c.a2 = parse_double(cells[8]);
  r.rate_s1_analytic = optional_double(cells[9]);
  r.rate_s2_analytic = optional_double(cells[10]);
  r.rate_total_analytic = optional_double(cells[11]);
  r.rate_high_snr = optional_double(cells[12]);
  r.rate_mc = optional_double(cells[13]);
  r.rate_mc_stderr = optional_double(cells[14]);
  r.outage_analytic = optional_double(cells[15]);
  r.outage_mc = optional_double(cells[16]);
  r.outage_mc_stderr = optional_double(cells[17]);
  if (!cells[18].empty()) r.trials = parse_int<std::uint64_t>(cells[18]);
  return record;
}

}  // namespace crsnoma::csv
