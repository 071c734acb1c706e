#pragma once

#include <stdexcept>
#include <string>

namespace fracspec {

// Bad argument: out-of-range order, point on a branch cut, index past the end.
class DomainError : public std::invalid_argument {
public:
    explicit DomainError(const std::string& what) : std::invalid_argument(what) {}
};

// A quadrature error estimate exceeded its tolerance.
class AccuracyError : public std::runtime_error {
public:
    explicit AccuracyError(const std::string& what) : std::runtime_error(what) {}
};

// Iteration or root search did not converge.
class ConvergenceError : public std::runtime_error {
public:
    explicit ConvergenceError(const std::string& what) : std::runtime_error(what) {}
};

} // namespace fracspec
