#ifndef CRSNOMA_CLI_HPP_
#define CRSNOMA_CLI_HPP_

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "crsnoma/channel.hpp"
#include "crsnoma/simulator.hpp"

namespace crsnoma::cli {

namespace exit_code {
inline constexpr int kOk = 0;
inline constexpr int kValidationFailed = 1;
inline constexpr int kIo = 2;
inline constexpr int kNumerical = 3;
inline constexpr int kUsage = 64;
}  // namespace exit_code

/// Raised by parse_and_validate. exit_code is kUsage for bad input and
/// kOk when the user asked for help (what() then holds the help text).
class UsageError : public std::runtime_error {
 public:
  UsageError(const std::string& message, int code = exit_code::kUsage)
      : std::runtime_error(message), code_(code) {}
  int exit_code() const noexcept { return code_; }

 private:
  int code_;
};

enum class Command { kRateSweep, kOutageSweep, kOptimizeA2, kValidate, kFigure };

struct RunSpec {
  Command command = Command::kRateSweep;
  std::string figure;  // fig2..fig8 when command == kFigure
  SystemConfig config;
  Scheme scheme = Scheme::kNoma;
  std::optional<double> a2_fixed;  // nullopt: per-point optimal a2
  bool refine = false;             // optimize-a2: add a 0.001-step pass
  double rho_start_db = 0.0;
  double rho_stop_db = 30.0;
  double rho_step_db = 2.0;
  std::uint64_t trials = 1'000'000;  // 0: analytic values only
  std::uint64_t seed = 1;
  unsigned workers = 0;
  std::string out_path;  // empty: standard output
  std::vector<std::string> warnings;
};

/// Parses arguments (without the program name). Defaults: Ω = (sd 1,
/// sr 10, rd 2.5), R = 1, m = 1, N = 1, SC, NOMA, a2 = opt. The ρ grid
/// defaults to [0, 30] dB step 2 for rate commands and [0, 40] dB step
/// 2.5 for outage commands.
RunSpec parse_and_validate(const std::vector<std::string>& args);

/// Inclusive grid start, start + step, ..., stop (rounded to 1e-9 dB).
std::vector<double> rho_grid(double start_db, double stop_db, double step_db);

/// Runs the command. CSV goes to spec.out_path, or to `out` when empty;
/// progress and diagnostics go to `log`. Returns an exit code.
int execute(const RunSpec& spec, std::ostream& out, std::ostream& log);

/// Figure preset names accepted by `figure`.
const std::vector<std::string>& figure_names();

}  // namespace crsnoma::cli

#endif  // CRSNOMA_CLI_HPP_
