#pragma once

#include <stdexcept>
#include <string>

namespace fracent {

// Base of every error the library throws.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// An argument lies outside the region where the quantity is real-valued or defined.
class DomainError : public Error {
public:
    using Error::Error;
};

// An iterative method (quadrature, root finder, series) failed to meet its tolerance.
class ConvergenceError : public Error {
public:
    using Error::Error;
};

// Mean normalized velocity at 1/2 makes the linear multiplier system singular (b = 0).
class DegenerateMeanError : public DomainError {
public:
    using DomainError::DomainError;
};

// Malformed textual input; line is 1-based, 0 when not tied to a line.
class ParseError : public Error {
public:
    ParseError(const std::string& what, int line = 0)
        : Error(line > 0 ? "line " + std::to_string(line) + ": " + what : what), line_(line) {}

    int line() const noexcept { return line_; }

private:
    int line_;
};

}  // namespace fracent
