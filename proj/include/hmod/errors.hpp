#pragma once

#include <stdexcept>
#include <string>

namespace hmod {

// Base class for all errors thrown by this library.
class Error : public std::runtime_error {
  public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// An argument broke an interface contract (dimension mismatch, empty family, ...).
class ContractViolation : public Error {
    using Error::Error;
};

// Input data failed a mathematical precondition of a checker
// (family not orthogonal, operator numerically singular, ...).
class PreconditionViolation : public Error {
    using Error::Error;
};

// A numerical kernel failed to converge or produced an out-of-tolerance result.
class NumericalFailure : public Error {
    using Error::Error;
};

// Serialized data failed schema or invariant validation.
class ValidationError : public Error {
    using Error::Error;
};

} // namespace hmod
