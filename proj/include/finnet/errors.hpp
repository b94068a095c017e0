#pragma once

#include <stdexcept>
#include <string>

namespace finnet {

/// Base class for every failure raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class DimensionMismatch : public Error {
public:
    using Error::Error;
};

/// A pivot fell below the LU threshold.
class SingularMatrix : public Error {
public:
    using Error::Error;
};

/// Orthant enumeration refused because 2^n would be too large.
class DimensionTooLarge : public Error {
public:
    using Error::Error;
};

class NotDeterminedWithinCap : public Error {
public:
    using Error::Error;
};

class NoPositiveEquilibrium : public Error {
public:
    using Error::Error;
};

class InsufficientLength : public Error {
public:
    using Error::Error;
};

/// An optimization problem has no feasible point.
class InfeasibleProblem : public Error {
public:
    using Error::Error;
};

/// The inputs violate an assumption of the model (e.g. an LP that should be
/// bounded is reported unbounded).
class ModelError : public Error {
public:
    using Error::Error;
};

}  // namespace finnet
