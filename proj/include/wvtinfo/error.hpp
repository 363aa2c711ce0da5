#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace wvtinfo {

// Precondition violations: bad sizes, mismatched axes, out-of-range parameters.
class InvalidArgument : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// Input is well-formed but carries no usable information (constant waveform,
// zero-power signal, empty reference row).
class DegenerateInput : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Malformed run configuration. `where` names the offending field path or a
// "line:column" location in the source text.
class ConfigError : public std::runtime_error {
public:
    ConfigError(std::string where, const std::string& what)
        : std::runtime_error(where + ": " + what), where_(std::move(where)) {}

    const std::string& where() const noexcept { return where_; }

private:
    std::string where_;
};

}  // namespace wvtinfo
