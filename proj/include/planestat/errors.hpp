#pragma once

#include <stdexcept>
#include <string>

namespace planestat {

// Raised when a computation cannot be completed (bad range, failed
// convergence, truncation budget exhausted, inexact division).
class ComputationError : public std::runtime_error {
public:
    explicit ComputationError(const std::string& what) : std::runtime_error(what) {}
};

class RangeError : public ComputationError {
public:
    explicit RangeError(const std::string& what) : ComputationError(what) {}
};

class ConvergenceError : public ComputationError {
public:
    explicit ConvergenceError(const std::string& what) : ComputationError(what) {}
};

class TruncationError : public ComputationError {
public:
    explicit TruncationError(const std::string& what) : ComputationError(what) {}
};

class InexactDivisionError : public ComputationError {
public:
    explicit InexactDivisionError(const std::string& what) : ComputationError(what) {}
};

// Two series of different truncation orders were combined.
class OrderMismatchError : public std::invalid_argument {
public:
    explicit OrderMismatchError(const std::string& what) : std::invalid_argument(what) {}
};

} // namespace planestat
