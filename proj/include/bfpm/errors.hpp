#pragma once

#include <stdexcept>
#include <string>

namespace bfpm {

/// Data or runtime failure: unreadable input, degenerate geometry,
/// undefined quantity. Maps to process exit code 1 in the CLI.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// Caller misuse: parameter outside its documented domain, incompatible
/// option combination. Maps to process exit code 2 in the CLI.
class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

} // namespace bfpm
