#pragma once
#include <optional>
#include <stdexcept>
#include <string>

namespace escdim {

// Common base so callers can catch everything escdim throws with one handler.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Bad user/config input (wrong family parameters, malformed JSON, bad flags).
struct ConfigError : Error {
    using Error::Error;
};

// Evaluation-domain problems: the request is well-formed but cannot be
// answered at this point / with these parameters.
struct EvalDomainError : Error {
    using Error::Error;
};

// Evaluation point closer than the hard guard distance to the contour.
struct NearSingularityError : EvalDomainError {
    using EvalDomainError::EvalDomainError;
};

// Adaptive quadrature exhausted its subdivision budget. Carries the error
// estimate it did achieve so callers can decide whether to accept anyway.
struct ToleranceNotMetError : EvalDomainError {
    double achieved;
    ToleranceNotMetError(const std::string& msg, double achieved_)
        : EvalDomainError(msg), achieved(achieved_) {}
};

// A magnitude left the representable window (|w| > 1e300).  When the blow-up
// comes from a closed-form term we pass its log-magnitude along so callers
// (growth statistics, orbit classification) can keep working in log space.
struct OverflowError : EvalDomainError {
    std::optional<double> log_magnitude;
    explicit OverflowError(const std::string& msg,
                           std::optional<double> logmag = std::nullopt)
        : EvalDomainError(msg), log_magnitude(logmag) {}
};

// Tail certification of a truncated contour failed its sample validation.
struct TailBoundError : EvalDomainError {
    using EvalDomainError::EvalDomainError;
};

// Dimension-estimation errors.
struct EmptySetError : Error {
    using Error::Error;
};
struct ScaleError : Error {
    using Error::Error;
};
struct InsufficientScalesError : Error {
    using Error::Error;
};

// Residual sampling dropped every probe point.
struct AllSamplesFilteredError : Error {
    using Error::Error;
};

} // namespace escdim
