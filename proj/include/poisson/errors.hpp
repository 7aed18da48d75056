#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace poisson {

/// Malformed or inconsistent user input (bad expression, unknown symbol,
/// non-skew table, wrong matrix shape).
class InputError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Expression syntax error carrying the 0-based column where it was detected.
class ParseError : public InputError {
public:
    ParseError(const std::string& what, std::size_t column)
        : InputError(what + " at column " + std::to_string(column + 1)), column_(column) {}

    std::size_t column() const { return column_; }

private:
    std::size_t column_;
};

/// A mathematically undefined operation: pole, division by zero, singular matrix.
class MathError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Two independent constructions that must agree did not. Always a bug or a
/// broken convention, never a property of the input.
class CertificationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace poisson
