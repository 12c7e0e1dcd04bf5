#pragma once

// Typed error hierarchy. Every singular configuration of the formulas
// (q = 0, qtilde = 0, negative radicands, turning points of P) raises a
// distinct exception carrying the offending location in its message.

#include <stdexcept>
#include <string>

namespace reidlab {

/// Base class of all library errors.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// Configuration / argument validation failure (CLI exit code 2).
class ConfigError : public Error {
public:
    using Error::Error;
};

/// Numerical singularity or domain violation (CLI exit code 3).
class SingularityError : public Error {
public:
    SingularityError(const std::string& what, double where)
        : Error(what), where_(where) {}
    explicit SingularityError(const std::string& what)
        : Error(what), where_(0.0) {}

    /// Location (t, Y, Qtilde, ...) at which the singularity was detected.
    double where() const noexcept { return where_; }

private:
    double where_;
};

class StepLimitExceeded : public Error {
public:
    using Error::Error;
};

class NonFiniteState : public SingularityError {
public:
    using SingularityError::SingularityError;
};

class NonFiniteIntegrand : public SingularityError {
public:
    using SingularityError::SingularityError;
};

class PathTooShort : public Error {
public:
    using Error::Error;
};

class SingularQ : public SingularityError {
public:
    using SingularityError::SingularityError;
};

class SingularQtilde : public SingularityError {
public:
    using SingularityError::SingularityError;
};

class SingularRtilde : public SingularityError {
public:
    using SingularityError::SingularityError;
};

class SingularR : public SingularityError {
public:
    using SingularityError::SingularityError;
};

class NegativeRadicand : public SingularityError {
public:
    using SingularityError::SingularityError;
};

class NoRealBranch : public SingularityError {
public:
    using SingularityError::SingularityError;
};

class ConstraintViolated : public ConfigError {
public:
    using ConfigError::ConfigError;
};

class DomainMismatch : public ConfigError {
public:
    using ConfigError::ConfigError;
};

class NonpositiveY : public SingularityError {
public:
    using SingularityError::SingularityError;
};

class NonpositiveTau : public SingularityError {
public:
    using SingularityError::SingularityError;
};

class NonpositiveP : public SingularityError {
public:
    using SingularityError::SingularityError;
};

class DegenerateU : public SingularityError {
public:
    using SingularityError::SingularityError;
};

class ZeroA : public ConfigError {
public:
    using ConfigError::ConfigError;
};

class Unsupported : public ConfigError {
public:
    using ConfigError::ConfigError;
};

}  // namespace reidlab
