#ifndef PTSCAT_ERRORS_HPP
#define PTSCAT_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace ptscat {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Bad user-supplied parameter (regime range, grid, series index ...).
class InvalidArgument : public Error {
public:
    using Error::Error;
};

/// The requested quantity does not exist at this point: Gamma pole, S-matrix
/// pole, wavefunction node, degenerate hypergeometric parameters.
class DomainError : public Error {
public:
    using Error::Error;
};

class PoleError : public DomainError {
public:
    using DomainError::DomainError;
};

class NodeError : public DomainError {
public:
    NodeError(const std::string& what, double x) : DomainError(what), x_(x) {}
    double x() const noexcept { return x_; }

private:
    double x_;
};

class OverflowError : public DomainError {
public:
    using DomainError::DomainError;
};

/// Iterative method failed to converge (or wandered away from its seed).
class ConvergenceError : public Error {
public:
    using Error::Error;
};

} // namespace ptscat

#endif // PTSCAT_ERRORS_HPP
