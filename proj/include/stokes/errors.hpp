#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace stokes {

/// Fields or families that live on different grids were combined.
class DomainMismatch : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Base class for failures inside the eigensolver.
class SolverError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// The iteration cap was reached before every requested pair met the tolerance.
class NonConvergence : public SolverError {
public:
    NonConvergence(const std::string& what, std::vector<double> residuals)
        : SolverError(what), residuals_(std::move(residuals)) {}

    /// Best residuals reached for the requested pairs, in eigenvalue order.
    const std::vector<double>& residuals() const { return residuals_; }

private:
    std::vector<double> residuals_;
};

/// A matrix that must be positive definite failed its factorization.
class IndefiniteMatrix : public SolverError {
public:
    using SolverError::SolverError;
};

/// A vector set handed to an orthonormalization is linearly dependent.
class RankDeficiency : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A family violates the orthonormality precondition of a check.
class OrthonormalityViolation : public std::runtime_error {
public:
    OrthonormalityViolation(const std::string& what, double deviation)
        : std::runtime_error(what), deviation_(deviation) {}

    /// max |G_ij - delta_ij| of the offending Gram matrix.
    double deviation() const { return deviation_; }

private:
    double deviation_;
};

}  // namespace stokes
