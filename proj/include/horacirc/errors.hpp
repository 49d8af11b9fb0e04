#pragma once

#include <stdexcept>
#include <string>

namespace horacirc {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Division by an exact zero.
class DivisionByZero : public Error {
public:
    DivisionByZero() : Error("division by zero") {}
};

/// Arithmetic across Q(sqrt D) values with different D.
class DiscriminantMismatch : public Error {
public:
    using Error::Error;
};

/// A quadratic-field value with a nonzero sqrt(D) part was demoted to a rational.
class IrrationalResidue : public Error {
public:
    using Error::Error;
};

/// Binet evaluation requested with p^2 + 4q = 0.
class RepeatedRoot : public Error {
public:
    using Error::Error;
};

/// A closed-form path hit a vanishing denominator. `denominator()` names it.
class DegenerateCase : public Error {
public:
    explicit DegenerateCase(std::string denominator)
        : Error("degenerate case: " + denominator + " = 0"), denominator_(std::move(denominator)) {}

    const std::string& denominator() const noexcept { return denominator_; }

private:
    std::string denominator_;
};

/// The matrix is exactly singular.
class SingularMatrix : public Error {
public:
    SingularMatrix() : Error("singular matrix") {}
    using Error::Error;
};

/// Floating DFT inverse found an eigenvalue below the singularity threshold.
class NumericallySingular : public Error {
public:
    using Error::Error;
};

class DimensionMismatch : public Error {
public:
    using Error::Error;
};

/// Argument outside an operation's domain (n < 3 for the closed forms, etc.).
class InvalidArgument : public Error {
public:
    using Error::Error;
};

/// Malformed textual input (rational strings, JSON documents).
class ParseError : public Error {
public:
    using Error::Error;
};

}  // namespace horacirc
