#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace ma_radial {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed expression text. `position()` is a 0-based byte offset.
class ParseError : public Error {
public:
    ParseError(const std::string& message, std::size_t position)
        : Error("syntax error at position " + std::to_string(position) + ": " + message),
          position_(position) {}

    std::size_t position() const noexcept { return position_; }

private:
    std::size_t position_;
};

/// Evaluation outside the domain of a sub-expression (log of a nonpositive
/// value, division by zero, derivative of abs at 0, ...).
class DomainError : public Error {
public:
    DomainError(const std::string& message, std::string subexpression)
        : Error(message + " in " + subexpression), subexpression_(std::move(subexpression)) {}

    const std::string& subexpression() const noexcept { return subexpression_; }

private:
    std::string subexpression_;
};

/// A Taylor jet could not be formed because the expression is singular at
/// the expansion point (e.g. exp(-1/t) at t = 0). Callers fall back to
/// limit-based probing.
class SingularJetError : public DomainError {
public:
    using DomainError::DomainError;
};

/// Invalid argument or violated precondition.
class ParameterError : public Error {
public:
    using Error::Error;
};

/// Right hand side took a negative value at a sampled point.
class NegativeRhsError : public Error {
public:
    NegativeRhsError(double t, double xi, double zeta, double value);

    double t, xi, zeta, value;
};

/// Picard iteration failed to reach its tolerance.
class ConvergenceError : public Error {
public:
    ConvergenceError(int iterations, double last_update)
        : Error("no convergence after " + std::to_string(iterations) +
                " iterations (last update " + std::to_string(last_update) + ")"),
          iterations(iterations), last_update(last_update) {}

    int iterations;
    double last_update;
};

/// NaN or overflow produced during iteration.
class NumericError : public Error {
public:
    NumericError(const std::string& what, int iteration)
        : Error(what + " at iteration " + std::to_string(iteration)), iteration(iteration) {}

    int iteration;
};

}  // namespace ma_radial
