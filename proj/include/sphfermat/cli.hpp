#pragma once

/** Command-line front end. Parsing and dispatch live in the library so they
 * can be exercised without spawning a process; tools/sphfermat_cli.cpp is a
 * thin main(). */

#include <array>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace sphfermat::cli {

enum class Command {
  Solve,
  Classify,
  Minimize,
  PlasticityGenerate,
  PlasticityInvert,
  Grid
};
enum class OutputFormat { Json, Csv };
enum class AngleUnit { Rad, Deg };
enum class InverseSolver { Newton, Weierstrass, Both };

inline constexpr int kExitOk = 0;
inline constexpr int kExitValidation = 2;
inline constexpr int kExitSolver = 3;

/// Bad flags or values. Rendered as a single "error: validation: ..." line.
class ValidationError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  Command command = Command::Solve;
  std::array<double, 3> weights{};
  /// x1,y1,z1,x2,...,z3; the octant triangle when absent.
  std::optional<std::array<double, 9>> triangle;
  std::optional<std::array<double, 3>> offsets; ///< in angle_unit
  std::optional<std::array<double, 3>> targets; ///< in angle_unit
  int resolution = 100;
  OutputFormat format = OutputFormat::Json;
  std::optional<std::string> output_path;
  AngleUnit angle_unit = AngleUnit::Rad;
  InverseSolver solver = InverseSolver::Both;
};

struct RunOutcome {
  int exit_code = kExitOk;
  std::string payload; ///< JSON or CSV document, newline-terminated
  std::string error;   ///< one-line message when exit_code != 0
};

/// Parses argv (argv[0] is the program name). Throws ValidationError.
/// Returns nullopt when help was requested and printed to `help_out`.
std::optional<RunConfig> parse_args(const std::vector<std::string> &argv,
                                    std::string *help_out = nullptr);

/// Validates and dispatches. Never throws; failures are reported through the
/// exit code and `error`.
RunOutcome run(const RunConfig &config);

std::string version();

} // namespace sphfermat::cli
