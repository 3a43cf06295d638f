#pragma once

#include <stdexcept>
#include <string>

namespace hoplink {

/// Malformed or schema-violating configuration input.
struct ConfigError : std::runtime_error {
    explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

/// Constraints that cannot be met for the given geometry.
struct InfeasibleError : std::runtime_error {
    explicit InfeasibleError(const std::string& msg) : std::runtime_error(msg) {}
};

} // namespace hoplink
