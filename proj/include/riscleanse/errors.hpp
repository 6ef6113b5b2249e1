#pragma once

#include <stdexcept>
#include <string>

namespace riscleanse {

/// Bad or inconsistent configuration (unknown rule id, invalid weights,
/// missing referenced file). Maps to exit code 1 in the CLI.
struct ConfigError : std::runtime_error {
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

/// Filesystem-level failure (unreadable input, failed write). Maps to exit
/// code 2 in the CLI.
struct IoError : std::runtime_error {
    explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace riscleanse
