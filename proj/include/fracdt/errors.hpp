#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace fracdt {

/// Argument outside the mathematical domain of an operation.
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// A numeric path was asked to evaluate something it cannot sample
/// pointwise (the Dirac delta).
class RefusalError : public DomainError {
public:
    using DomainError::DomainError;
};

/// Coefficients failed the linear-growth / Lipschitz spot-check.
class CoefficientError : public DomainError {
public:
    using DomainError::DomainError;
};

/// Numerical non-convergence: quadrature budget exhausted, Picard gaps
/// not contracting, non-finite iterates.
class ConvergenceError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Quadrature failure at a specific point of a batch evaluation.
class GridPointError : public ConvergenceError {
public:
    GridPointError(std::size_t index, const std::string& what)
        : ConvergenceError("grid index " + std::to_string(index) + ": " + what),
          index_(index) {}

    std::size_t index() const noexcept { return index_; }

private:
    std::size_t index_;
};

}  // namespace fracdt
