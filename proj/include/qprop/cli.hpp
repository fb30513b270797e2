#ifndef QPROP_CLI_HPP
#define QPROP_CLI_HPP

#include <filesystem>
#include <optional>

namespace qprop::cli {

struct RunOptions {
  std::filesystem::path out_dir;        // output root; empty = current directory
  std::optional<double> tol_override;   // overrides truncation.tol from the config
};

// Exit codes: 0 success, 2 config parse error, 3 model/parameter validation
// error, 4 tolerance breach in an oracle-compare task.
inline constexpr int kExitOk = 0;
inline constexpr int kExitParse = 2;
inline constexpr int kExitValidation = 3;
inline constexpr int kExitTolerance = 4;

// Executes one config file (JSON; schema documented in the README) and
// writes its CSV output.  Deterministic: fixed orderings, no RNG, floats
// printed with 17 significant digits.
int run_config(const std::filesystem::path& config_path, const RunOptions& opts);

}  // namespace qprop::cli

#endif
