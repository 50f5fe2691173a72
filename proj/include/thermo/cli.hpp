#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace thermo::cli {

enum class Command { PressureCurve, Duality, Variance, PhaseScan, Verify, Info, Table };
enum class Format { Csv, Json };

enum ExitCode : int {
  kSuccess = 0,
  kInvalidInput = 2,
  kNumericalFailure = 3,
  kVerificationFailure = 4,
};

struct RunConfig {
  Command command = Command::Info;
  std::string input_path;
  std::string potential;                 // family direction ψ
  std::optional<std::string> base;       // φ₀, zero when absent
  std::optional<std::string> direction;  // observable for `variance`, defaults to ψ
  double t_min = -5.0;
  double t_max = 5.0;
  std::size_t steps = 1001;
  std::size_t a_steps = 0;  // 0: same as steps
  double at = 0.0;
  double tol = 1e-13;
  double threshold = 1e-3;
  std::size_t lags = 20;
  std::uint64_t seed = 1;
  int jobs = 1;
  std::string output_path;  // empty: standard output
  std::optional<Format> format;
};

/// Parses argv into a config. Prints help / usage errors itself and returns
/// the exit code to use instead when the program should stop.
struct ParseResult {
  std::optional<RunConfig> config;
  int exit_code = kSuccess;
};
ParseResult parse_command_line(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

/// Dispatches one command. Results go to `out` (or the output file),
/// one-line diagnostics to `err`.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

/// Computed counterparts of the golden mean summary constants, one row per
/// quantity, with a status column against the published reference values.
struct TableRow {
  std::string quantity;
  std::string computed;
  std::string reference;
  bool agrees = true;
  std::string note;
};
std::vector<TableRow> golden_table();
void emit_golden_table(std::ostream& out);

}  // namespace thermo::cli
