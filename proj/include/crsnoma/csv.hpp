#ifndef CRSNOMA_CSV_HPP_
#define CRSNOMA_CSV_HPP_

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "crsnoma/simulator.hpp"

namespace crsnoma::csv {

inline constexpr std::string_view kToolVersion = "0.1.0";

/// "# crs-noma-lab v<version>, seed=<seed>"
std::string banner(std::uint64_t seed);

/// Shortest text that round-trips the double ("%.17g").
std::string format_double(double value);

/// A parsed file: leading comment (without "# "), header, raw cells.
struct Table {
  std::string comment;
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;
};

void write_table(std::ostream& out, const Table& table);

/// Inverse of write_table. Throws std::runtime_error on ragged rows or a
/// missing header. Cells never contain commas or quotes in this format.
Table read_table(std::istream& in);

/// Column order shared by every sweep-style output.
const std::vector<std::string>& sweep_columns();

/// A sweep row plus its scheme label. The label is "noma" or "oma" for
/// simulated rows and "noma-oma" for difference rows, whose numeric
/// fields hold NOMA minus OMA.
struct SweepRecord {
  std::string scheme_label;
  SweepRow row;
};

SweepRecord make_record(const SweepRow& row);

/// Cells in sweep_columns() order; absent values are empty strings.
std::vector<std::string> sweep_cells(const SweepRecord& record);

/// Inverse of sweep_cells. Only fields present in the schema are
/// restored; Ω and the target rate keep their defaults.
SweepRecord parse_sweep_cells(const std::vector<std::string>& columns,
                              const std::vector<std::string>& cells);

}  // namespace crsnoma::csv

#endif  // CRSNOMA_CSV_HPP_
