#pragma once

#include <stdexcept>
#include <string>

namespace asympl {

/// Base class of every error raised by the toolkit.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Operands of incompatible dimension (nvars, degrees of freedom, matrix shape).
class DimensionError : public Error {
 public:
  using Error::Error;
};

/// Index out of range or a point outside the chart domain.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Malformed input: configuration, serialized data, non-unimodular matrices.
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// A function failed a classification test it was required to pass.
class ClassificationError : public Error {
 public:
  using Error::Error;
};

/// Operation requested outside of the regime where it is defined.
class RegimeError : public Error {
 public:
  using Error::Error;
};

/// Numerical integration could not proceed (step underflow, step budget).
class NumericalError : public Error {
 public:
  using Error::Error;
};

}  // namespace asympl
