#ifndef RWTAIL_ERROR_HPP
#define RWTAIL_ERROR_HPP

#include <stdexcept>
#include <string>

namespace rwtail {

// Base of every error thrown by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Argument outside the mathematical domain of an operation.
class DomainError : public Error {
public:
    using Error::Error;
};

// Malformed model, matrix, or scenario.
class ValidationError : public Error {
public:
    using Error::Error;
};

// Marginal ordering violates the tail-equivalence assumption (some X_i heavier than X_1).
class InvalidOrderingError : public ValidationError {
public:
    using ValidationError::ValidationError;
};

// Operation not defined for the given model class (e.g. auxiliary function of a Frechet law).
class UnsupportedError : public Error {
public:
    using Error::Error;
};

// Numerical procedure failed to reach its tolerance.
class NumericError : public Error {
public:
    NumericError(const std::string& what, double achieved)
        : Error(what), achieved_(achieved) {}
    double achieved_tolerance() const noexcept { return achieved_; }

private:
    double achieved_;
};

// Not enough samples for an empirical statistic.
class SampleSizeError : public DomainError {
public:
    using DomainError::DomainError;
};

} // namespace rwtail

#endif
