#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace fpf {

/// Argument outside an operation's domain (non-finite phase, dt <= 0, ...).
class InvalidArgument : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Input data violating a modelling hypothesis (phi0 outside [0,1], u0 != 0 on the boundary).
class PreconditionViolation : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// A time step produced NaN/Inf.
class DivergenceError : public std::runtime_error {
public:
    DivergenceError(const std::string& what, double time)
        : std::runtime_error(what + " at t=" + std::to_string(time)), time_(time) {}
    double time() const noexcept { return time_; }

private:
    double time_;
};

/// Absolute temperature reached a non-positive value.
class SingularTemperature : public std::runtime_error {
public:
    SingularTemperature(const std::string& what, double time)
        : std::runtime_error(what + " at t=" + std::to_string(time)), time_(time) {}
    double time() const noexcept { return time_; }

private:
    double time_;
};

/// Configuration could not be parsed or validated; carries every problem found.
class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(std::vector<std::string> errors);
    const std::vector<std::string>& errors() const noexcept { return errors_; }

private:
    std::vector<std::string> errors_;
};

} // namespace fpf
