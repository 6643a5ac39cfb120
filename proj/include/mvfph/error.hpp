#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace mvfph {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed input text. Carries a 1-based line/column when known (0 otherwise).
class ParseError : public Error {
public:
    ParseError(const std::string& what, std::size_t line, std::size_t column)
        : Error(format(what, line, column)), line_(line), column_(column) {}

    std::size_t line() const noexcept { return line_; }
    std::size_t column() const noexcept { return column_; }

private:
    static std::string format(const std::string& what, std::size_t line, std::size_t column) {
        if (line == 0) return what;
        return "line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + what;
    }

    std::size_t line_;
    std::size_t column_;
};

/// Input parsed but violates a domain invariant (row sums, ranges, shapes, preconditions).
class ValidationError : public Error {
public:
    using Error::Error;
};

/// A theorem-backed invariant failed. Signals a bug, never bad input.
class InvariantError : public Error {
public:
    using Error::Error;
};

}  // namespace mvfph
