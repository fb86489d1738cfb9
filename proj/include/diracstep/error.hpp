#pragma once

#include <stdexcept>

namespace diracstep {

/// Inputs outside the physical domain (E <= m, negative height, ...).
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Input sits exactly on a regime boundary (E - U = +-m); the caller must perturb.
class RegimeBoundaryError : public DomainError {
public:
    using DomainError::DomainError;
};

/// Operation is undefined in the solution's regime (e.g. real gamma when evanescent).
class NotApplicableError : public DomainError {
public:
    using DomainError::DomainError;
};

/// Iterative solver failed or produced non-finite values.
class NumericError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace diracstep
