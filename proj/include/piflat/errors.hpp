#pragma once

#include <stdexcept>
#include <string>

namespace piflat {

/// Division by zero, inversion of zero, and similar algebraic domain violations.
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Evaluation of a rational function at one of its poles.
class PoleError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Evaluation of a signal outside the window where it is known exactly.
class HorizonError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Mismatched operand shapes or delay parameters.
class ShapeError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// An algorithm was called outside of its documented precondition.
class PreconditionError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& what, int line, int column)
        : std::runtime_error(std::to_string(line) + ":" + std::to_string(column) + ": " + what),
          line_(line), column_(column) {}

    int line() const noexcept { return line_; }
    int column() const noexcept { return column_; }

private:
    int line_;
    int column_;
};

}  // namespace piflat
