#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>

namespace mirrorjac::cli {

enum class Format { json, csv };

struct RunConfig {
  std::string command;                    // theorem1, theorem1-exact, appendix, ...
  std::optional<std::string> input_path;  // --spec / --potential
  std::optional<std::size_t> M;
  std::optional<std::size_t> J;
  std::size_t trials = 20;
  std::uint64_t seed = 1;
  std::map<std::string, double> tolerances;  // overrides of the defaults
  std::optional<std::string> output_path;
  Format format = Format::json;
  unsigned threads = 1;
  double A = 1.0;
  std::size_t N = 100;
};

inline constexpr int kExitOk = 0;
inline constexpr int kExitViolation = 1;
inline constexpr int kExitUsage = 2;

/// Default tolerance for each name accepted by --tol.
const std::map<std::string, double>& default_tolerances();

/// Executes one command and writes the report to `out`; diagnostics go to
/// `err`. Returns one of the exit codes above.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

/// Parses argv (flags may also come from MIRRORJAC_* environment
/// variables), runs, and writes to --out or stdout.
int main_entry(int argc, char** argv);

}  // namespace mirrorjac::cli
