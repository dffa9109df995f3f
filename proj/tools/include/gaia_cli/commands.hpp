#pragma once

#include "gaia/types.hpp"

#include <cstdint>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>

namespace gaia::cli {

// Bad flags or flag values; maps to exit code 1.
class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct SweepSpec {
    std::string name;
    double start = 0.0;
    double stop = 0.0;
    int count = 1;
};

struct RunSpec {
    std::string command;
    std::string model_path;
    std::string out_path;  // empty or "-" -> stdout
    std::optional<SweepSpec> sweep;
    std::optional<int> crossings;
    std::optional<double> tol;
    std::optional<long> max_steps;
    std::optional<Window> window;
    std::uint64_t seed = 0;
    int initial = 1;  // 1-based level
    std::string method = "gaia";
    int random_n = 2;
    double random_kappa_max = 1.0;
};

SweepSpec parse_sweep(const std::string& text);
Window parse_window(const std::string& text);

enum ExitCode : int { kExitOk = 0, kExitUsage = 1, kExitValidation = 2, kExitRuntime = 3 };

// Runs one subcommand; messages for the user go to log. Throws UsageError,
// gaia::Error or std::exception on failure.
int run(const RunSpec& spec, std::ostream& log);

// Wraps run() and turns exceptions into "error: <Code>: message" lines and exit codes.
int run_guarded(const RunSpec& spec, std::ostream& log);

}  // namespace gaia::cli
