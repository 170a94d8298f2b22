#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace paraspin {

// Base class for all library errors.  The CLI maps subtypes to exit codes:
// InvalidInputError -> 2, InsufficientPrecisionError -> 3, FixtureError -> 4.
struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Malformed or out-of-domain input: non-fundamental discriminant, unknown
// level key, bad CSV row, unsupported flag combination, ...
struct InvalidInputError : Error {
    explicit InvalidInputError(const std::string& msg) : Error(msg) {}
};

// Signed-integer overflow detected by checked arithmetic.  Treated as a bug
// in the caller's parameters (series too long, coefficient table corrupt),
// never silently wrapped.
struct OverflowError : Error {
    explicit OverflowError(const std::string& msg) : Error(msg) {}
};

// The rigorous tail bound of a truncated series exceeds the requested
// tolerance.  Carries the data needed to either rerun with more coefficients
// or report the row as unresolved instead of dropping it.
struct InsufficientPrecisionError : Error {
    InsufficientPrecisionError(const std::string& msg, double value_so_far,
                               double tail_bound, std::int64_t required_n_max)
        : Error(msg), value(value_so_far), tail_bound(tail_bound),
          required_n_max(required_n_max) {}
    double value;               // central value computed from available terms
    double tail_bound;          // rigorous bound on the truncation error
    std::int64_t required_n_max;// estimated series length that would suffice
};

// A required fixture (curve table, value table, coefficient file) is missing
// or fails its integrity check.
struct FixtureError : Error {
    explicit FixtureError(const std::string& msg) : Error(msg) {}
};

// Internal consistency failure that indicates a bug rather than bad input
// (parity violation in point counts, certificate failure after retry, ...).
struct InternalCheckError : Error {
    explicit InternalCheckError(const std::string& msg) : Error(msg) {}
};

} // namespace paraspin
