#pragma once

#include <stdexcept>
#include <string>

namespace sfpfcc {

/// Invalid model parameters or arguments outside a function's domain.
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Inconsistent option contract (bad strike, barrier outside the interval, ...).
class ContractError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Base class for failures of the numerical pipeline.
class NumericalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Near-singular denominator or linear system.
class ConditioningError : public NumericalError {
public:
    ConditioningError(const std::string& what, double location)
        : NumericalError(what), location_(location) {}
    explicit ConditioningError(const std::string& what)
        : NumericalError(what), location_(0.0) {}

    /// Log-moneyness at which the problem was detected, if any.
    double location() const noexcept { return location_; }

private:
    double location_;
};

/// Order conditions of a rational fit not met to tolerance.
class FitQualityError : public NumericalError {
public:
    FitQualityError(const std::string& what, double residual)
        : NumericalError(what), residual_(residual) {}

    double residual() const noexcept { return residual_; }

private:
    double residual_;
};

}  // namespace sfpfcc
