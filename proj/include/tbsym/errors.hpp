#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace tbsym {

// Malformed arguments: mismatched variable lists, out-of-range indices,
// non-square determinants and the like.
class StructuralError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// Arguments that are well formed but outside an operation's domain
// (n < r for the Euclidean symbol, a spec that is not strictly decreasing).
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

// Text that does not match one of the input grammars. Line and column are
// 1-based; line is 1 for single-line inputs.
class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& what, std::size_t line, std::size_t column)
        : std::runtime_error(what + " at line " + std::to_string(line) + ", column " +
                             std::to_string(column)),
          line_(line),
          column_(column),
          message_(what) {}

    std::size_t line() const noexcept { return line_; }
    std::size_t column() const noexcept { return column_; }
    const std::string& message() const noexcept { return message_; }

private:
    std::size_t line_;
    std::size_t column_;
    std::string message_;
};

class TimeoutError : public std::runtime_error {
public:
    TimeoutError() : std::runtime_error("computation exceeded its time budget") {}
};

}  // namespace tbsym
