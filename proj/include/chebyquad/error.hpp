#pragma once

#include <stdexcept>
#include <string>

namespace chebyquad {

/// Base of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A measure or file violates a stated invariant (mass, sign, ordering...).
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// Caller-supplied parameters are outside the admissible range.
class ParameterError : public Error {
 public:
  using Error::Error;
};

/// Input lies outside the mathematical domain of an operation.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Iteration failed, matrix singular, or precision insufficient.
class NumericalError : public Error {
 public:
  using Error::Error;
};

/// A construction step cannot proceed (e.g. no separated subsets exist).
class ConstructionError : public Error {
 public:
  using Error::Error;
};

/// The measure is outside the class any construction here supports.
class UnsupportedMeasureError : public Error {
 public:
  using Error::Error;
};

}  // namespace chebyquad
