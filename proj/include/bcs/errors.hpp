#pragma once

#include <stdexcept>
#include <string>

namespace bcs {

/// Base class for all typed errors thrown by this library. Validation
/// failures are *not* errors; they come back as data in report structs.
struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

struct DomainError : Error {
    using Error::Error;
};

/// Malformed artifact file or unparsable rational/index literal.
struct ParseError : Error {
    using Error::Error;
};

struct EmptyFamily : Error {
    using Error::Error;
};

struct InvalidPlan : Error {
    using Error::Error;
};

struct IndexFunctionInfeasible : Error {
    using Error::Error;
};

struct LevelOutOfRange : Error {
    using Error::Error;
};

/// Evaluation below the depth the gauge table resolves. Carries the
/// resolution floor b_N as a "p/q" string.
struct BelowResolution : Error {
    std::string floor;
    BelowResolution(const std::string& msg, std::string floor_value)
        : Error(msg), floor(std::move(floor_value)) {}
};

/// A cover misses a deepest-level piece of its target; carries the witness.
struct CoverageError : Error {
    using Error::Error;
};

/// No level m within the built depth satisfies 2*b_m < min element diameter.
struct InsufficientDepth : Error {
    using Error::Error;
};

struct DegenerateElement : Error {
    using Error::Error;
};

struct MalformedMap : Error {
    using Error::Error;
};

/// A map fed to an operation that requires the strict pairwise
/// contraction property failed that check.
struct WeakContractionViolation : Error {
    using Error::Error;
};

struct IndexMismatch : Error {
    using Error::Error;
};

struct InsufficientSamples : Error {
    using Error::Error;
};

struct NotCertifiable : Error {
    using Error::Error;
};

struct GrowthModeRequired : Error {
    using Error::Error;
};

struct GaugeMismatch : Error {
    using Error::Error;
};

}  // namespace bcs
