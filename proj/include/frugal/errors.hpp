#pragma once

#include <stdexcept>
#include <string>

namespace frugal {

/// Base for every error the library reports on bad input or oversized instances.
class FrugalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed or inconsistent input (unknown ids, negative costs, bad JSON).
class InputError : public FrugalError {
public:
    using FrugalError::FrugalError;
};

/// Well-formed input that violates a structural precondition of the algorithm.
class DomainError : public FrugalError {
public:
    using FrugalError::FrugalError;
};

/// Some agent lies in every feasible set, so no bounded payment exists.
class MonopolyError : public DomainError {
public:
    using DomainError::DomainError;
};

/// An enumeration would exceed its configured cap.
class ScaleError : public FrugalError {
public:
    using FrugalError::FrugalError;
};

} // namespace frugal
