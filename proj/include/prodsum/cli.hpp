// Config parsing, experiment dispatch, result persistence and the
// built-in self-check of analytic identities.

#ifndef PRODSUM_CLI_HPP
#define PRODSUM_CLI_HPP

#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>

#include "prodsum/engine.hpp"

namespace prodsum {

// Exit codes: 0 success, 2 config error, 3 runtime/IO error, 4 self-check
// failure.
inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitRuntime = 3;
inline constexpr int kExitCheckFailed = 4;

struct ConfigError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct CliOverrides {
    std::optional<std::uint64_t> seed;
    std::optional<std::string> out;
    std::optional<int> workers;
    std::optional<bool> retain_samples;
};

/// Parses the JSON config file, validates it against the schema (unknown
/// keys are rejected, diagnostics name the key), applies overrides, and
/// fills defaults. A missing seed is generated from entropy and flagged so
/// run() can echo it. `kind`, when nonempty, must match the config's kind
/// or provides it.
ExperimentConfig parse_config(const std::string& path, const std::string& kind,
                              const CliOverrides& overrides);

/// Runs the experiment, writes <out>/samples.csv (schema fixed per kind)
/// plus <out>/metadata.json with everything needed to reproduce the run
/// bit-identically. Returns an exit code; diagnostics go to err.
int run(const ExperimentConfig& config, std::ostream& out, std::ostream& err);

/// Closed-form/quadrature identity suite: the covariance quadrature equals
/// 2, the optimizer reaches sqrt(2) and the known extremal function, and
/// sqrt(2t) at t = 0.25, 0.5. Prints one line per identity. Exit 0 or 4.
int run_check(std::ostream& out);

}  // namespace prodsum

#endif  // PRODSUM_CLI_HPP
