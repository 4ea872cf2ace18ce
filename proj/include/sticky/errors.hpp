#pragma once

#include <stdexcept>
#include <string>

namespace sticky {

/// Argument outside the mathematical domain of an operation.
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Request exceeds a fixed resource budget (enumeration depth, sample memory).
class CapacityError : public std::length_error {
public:
    using std::length_error::length_error;
};

/// Adaptive quadrature ran out of subdivisions before meeting its tolerance.
class QuadratureError : public std::runtime_error {
public:
    QuadratureError(const std::string& what, double achieved_error)
        : std::runtime_error(what), achieved_error_(achieved_error) {}

    double achieved_error() const noexcept { return achieved_error_; }

private:
    double achieved_error_;
};

}  // namespace sticky
