#pragma once

#include <stdexcept>
#include <string>

namespace re100 {

// Base class for all library errors.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Input violates a documented precondition (bad lengths, negative weights, ...).
class ValidationError : public Error {
public:
    using Error::Error;
};

// A series cannot be normalized (zero total).
class NormalizationError : public Error {
public:
    using Error::Error;
};

// A data file cannot be ingested; message names the offending row/column.
class IngestError : public Error {
public:
    using Error::Error;
};

// Query outside the domain of a function (e.g. x_g below the feasibility bound).
class DomainError : public Error {
public:
    using Error::Error;
};

// Problem size exceeds the documented capacity of an algorithm.
class ResourceError : public Error {
public:
    using Error::Error;
};

// The requested system is infeasible; carries the smallest feasible generation
// capacity when that bound is known.
class InfeasibleError : public Error {
public:
    explicit InfeasibleError(const std::string& msg, double min_generation = -1.0)
        : Error(msg), min_generation_(min_generation) {}

    // Smallest feasible x_g, or a negative value when not applicable.
    double min_generation() const { return min_generation_; }

private:
    double min_generation_;
};

// The LP solver stalled or could not certify its answer.
class SolverError : public Error {
public:
    using Error::Error;
};

}  // namespace re100
