#pragma once

#include <string>
#include <vector>

#include "burgers1d/core.hpp"

namespace burgers1d::cli {

inline constexpr const char* kVersion = "0.1.0";

enum class Command { profile, steady, spectrum, evolve, sweep, report };
enum class OutFormat { csv, json };

/// Thrown by parse_args when --help or --version was requested; carries the
/// text to print. Exit code 0.
class HelpRequested : public Error {
public:
    using Error::Error;
};

struct RunConfig {
    Command command = Command::profile;
    double alpha = 1.0;
    double k = 0.0;
    std::vector<double> eps = {0.25};  // single entry except for sweep
    int n = 0;                         // 0 = auto (resolution rule)
    double nu = 1e-3;
    double t_end = 0.0;                // 0 = auto (3 / lambda1)
    double dt = 0.01;
    int m = 4;
    int sample_every = 10;
    double tol = 1e-10;
    int max_iter = 25;
    std::string out_path;              // empty = "<command>.<format>"
    OutFormat format = OutFormat::csv;
    int jobs = 1;
    bool force_small_eps = false;
    bool reference_newton = false;     // deviation reference for evolve

    double eps0() const { return eps.front(); }
    int resolve_n(double e) const;
    std::string resolved_out_path() const;
};

const char* command_name(Command c);

/// Parse a full argument vector (subcommand first, program name excluded).
/// Throws ConfigError on usage or range errors.
RunConfig parse_args(const std::vector<std::string>& argv);

/// Execute a parsed configuration. Returns 0 on success, 1 on numerical
/// failure (diagnostic on stderr). Writes the artifact to out_path plus a
/// "<out_path>.meta.json" provenance sidecar.
int run(const RunConfig& cfg);

/// parse + run with exit-code mapping (usage errors: 2).
int cli_main(int argc, char** argv);

}  // namespace burgers1d::cli
