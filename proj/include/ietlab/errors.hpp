#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace ietlab {

// All library failures are typed exceptions below std::runtime_error so the
// CLI can map them to exit codes (config errors vs. numeric errors).

struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

struct ConfigError : Error {
    using Error::Error;
};

struct NumericError : Error {
    using Error::Error;
};

struct NonPositiveLength : ConfigError {
    using ConfigError::ConfigError;
};
struct DimensionMismatch : ConfigError {
    using ConfigError::ConfigError;
};
struct ReduciblePermutation : ConfigError {
    using ConfigError::ConfigError;
};
struct OutOfDomain : ConfigError {
    using ConfigError::ConfigError;
};
struct NotRotationClass : ConfigError {
    using ConfigError::ConfigError;
};
struct StructureViolation : ConfigError {
    using ConfigError::ConfigError;
};
struct TooSmallN : ConfigError {
    using ConfigError::ConfigError;
};

// Sign query on an interval containing 0, or an enclosure too wide to
// classify a point.  Callers may retry at doubled precision.
struct PrecisionExhausted : NumericError {
    using NumericError::NumericError;
};

struct SingularOrbit : NumericError {
    std::size_t step;
    SingularOrbit(std::size_t step_, const std::string& msg) : NumericError(msg), step(step_) {}
};

struct TieLengths : NumericError {
    using NumericError::NumericError;
};
struct StepBudgetExceeded : NumericError {
    using NumericError::NumericError;
};
struct PathMismatch : ConfigError {
    using ConfigError::ConfigError;
};
struct NonContractingPath : NumericError {
    using NumericError::NumericError;
};
struct ReturnBudgetExceeded : NumericError {
    using NumericError::NumericError;
};
struct DegenerateFrame : NumericError {
    using NumericError::NumericError;
};
struct BudgetExceeded : NumericError {
    // Best lattice index reached before the budget ran out (good-word search).
    long best_index = -1;
    explicit BudgetExceeded(const std::string& msg, long best = -1) : NumericError(msg), best_index(best) {}
};
struct QuadratureBlowup : NumericError {
    using NumericError::NumericError;
};
struct NoGapFound : NumericError {
    double covered_length = 0.0;
    explicit NoGapFound(const std::string& msg, double covered = 0.0)
        : NumericError(msg), covered_length(covered) {}
};

}  // namespace ietlab
