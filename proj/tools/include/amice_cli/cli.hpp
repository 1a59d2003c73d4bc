#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace amice::cli {

enum ExitCode : int {
    kOk = 0,
    kFailure = 1,
    kInvalidInput = 2,
    kPrecisionExhausted = 3,
    kSearchExhausted = 4,
    kToleranceNotMet = 5,
};

struct Config {
    int precision = 20;
    std::size_t order = 20;
    std::size_t nodes_a = 64;
    std::size_t nodes_theta = 256;
    std::int64_t bound = 100000;
};

// Defaults, then AMICE_PRECISION, then the JSON file (if any).
Config load_config(const std::optional<std::string>& path);

// args excludes the program name. JSON goes to out, diagnostics to err.
int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace amice::cli
