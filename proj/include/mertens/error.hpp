#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace mertens {

/// Argument outside the mathematical domain of an operation (x < 2, sigma <= 1, ...).
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Requested height or range exceeds what the loaded data can answer.
class RangeError : public std::out_of_range {
public:
    using std::out_of_range::out_of_range;
};

/// Requested work exceeds the configured memory/size budget.
class CapacityError : public std::length_error {
public:
    using std::length_error::length_error;
};

/// Malformed input text. `line()` is 1-based, 0 when not tied to a line.
class FormatError : public std::runtime_error {
public:
    FormatError(const std::string& what, std::size_t line = 0)
        : std::runtime_error(line == 0 ? what : "line " + std::to_string(line) + ": " + what),
          line_(line) {}

    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

/// Well-formed input that fails a semantic check (e.g. not a zeta zero table).
class ValidationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Inconsistent numerical configuration (quadrature range vs. table height, ...).
class ConfigError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

}  // namespace mertens
