#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace stpnet {

// Operand shapes do not fit the operation.
class DimensionError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// Malformed model text. Line and column are 1-based; 0 means "unknown".
class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& message, std::size_t line, std::size_t column)
        : std::runtime_error(format(message, line, column)),
          message_(message), line_(line), column_(column) {}

    const std::string& message() const noexcept { return message_; }
    std::size_t line() const noexcept { return line_; }
    std::size_t column() const noexcept { return column_; }

private:
    static std::string format(const std::string& message, std::size_t line, std::size_t column) {
        if (line == 0) return message;
        return std::to_string(line) + ":" + std::to_string(column) + ": " + message;
    }

    std::string message_;
    std::size_t line_;
    std::size_t column_;
};

// An enumeration or search hit its configured limit.
class CapExceeded : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// A theorem-backed consistency check failed; always a bug, never bad input.
class InternalError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

} // namespace stpnet

namespace stpnet {

// A state sequence that is not a closed walk of the given system.
class InvalidTrajectory : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

} // namespace stpnet
