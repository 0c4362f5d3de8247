/*
 * Command-line surface: configuration parsing, command dispatch, CSV/SVG
 * persistence, and the run manifest.
 *
 * Configuration is line-oriented `key=value` with '#' comments; command-line
 * flags override file values.  parse_config never throws on bad input --
 * it returns every violated constraint at once, which is what the CLI prints.
 *
 * Output contract: fixed column orders, shortest round-trip decimal floats
 * (locale-independent), atomic writes (tmp + rename), and a manifest.json
 * carrying the resolved config, wall time, and an FNV-1a checksum per output
 * so reruns can be compared byte-for-byte.  The process exit status is
 * nonzero whenever any truncation or resource flag was raised.
 */
#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace fri::cli {

struct RunConfig {
    std::string command = "sample";  // sample|clusters|edge-density|sweep|climb|capacity

    // Model parameters.
    int d = 3;
    double u = 1.0 / 6.0;
    double T = 2.0;
    int32_t N = 50;  // box [0, N]^d
    uint64_t seed = 1;
    int workers = 0;  // 0 = all hardware threads
    int64_t reps = 1;
    std::string out = ".";
    std::string mode = "exact-boundary";  // or padded-direct
    double padding_tol = 1e-6;

    // edge-density.
    std::string method = "both";  // closed|direct|both
    int64_t n_inputs = 100000;    // walks per closed-form input estimate

    // sweep grid.
    double u_min = 1.0 / 6.0, u_max = 1.0 / 6.0, u_step = 0.1;
    double T_min = 1.0, T_max = 3.0, T_step = 0.2;
    int64_t budget = int64_t(4) << 30;

    bool svg = true;

    // climb.
    double climb_u0 = 3.0, climb_T0 = 0.01;
    double climb_du = 0.01, climb_dT = 0.01;
    double climb_eps = 0.2;
    double climb_T_cap = 20.0;
    int64_t climb_reps = 1;

    bool operator==(const RunConfig&) const = default;
};

struct ParseOutcome {
    std::optional<RunConfig> config;   // engaged iff errors is empty
    std::vector<std::string> errors;   // every violated constraint, one per entry
};

// Parse config text plus flag overrides (key -> raw value, highest
// precedence).  Keys absent from both fall back to per-command defaults.
ParseOutcome parse_config(const std::string& text,
                          const std::map<std::string, std::string>& overrides = {});

// Emit every key in a fixed order; parse_config(emit_config(c)) == c.
std::string emit_config(const RunConfig& config);

struct ExecResult {
    int exit_code = 0;
    bool truncated = false;   // sampler padding budget, climb T cap
    bool resource = false;    // a resource guard refused the run
    std::vector<std::string> outputs;  // files written, relative to out
};

// Run one validated config to completion; writes outputs + manifest.json
// under config.out and reports flags in the exit code (0 clean, 3 flagged).
ExecResult execute(const RunConfig& config);

// Full CLI entry point: flags, config file, dispatch.  Returns the process
// exit status (0 ok, 2 configuration errors, 3 flagged run, 1 internal).
int run(int argc, char** argv);

// Shortest round-trip decimal rendering; the one float formatter used by
// every CSV and manifest writer.
std::string fmt_double(double v);

// FNV-1a 64-bit checksum, rendered as 16 hex digits.
std::string fnv1a_hex(const std::string& bytes);

}  // namespace fri::cli
