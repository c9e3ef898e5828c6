#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace qergo {

// Base of every error the library raises. The CLI maps ValidationError
// (and its children) to exit code 2 and NumericalError to exit code 3.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// An input violated a documented precondition.
class ValidationError : public Error {
 public:
  using Error::Error;
};

class DimensionError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

class NotCompletelyPositiveError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

class TracePreservationError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

// Raised when a check only makes sense for a restricted class of inputs,
// e.g. the purity criterion on a unitary that is not dual-unitary.
class InapplicableError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

// Solver did not converge or produced an internally inconsistent result.
class NumericalError : public Error {
 public:
  using Error::Error;
};

class NonUniqueFixedPointError : public Error {
 public:
  explicit NonUniqueFixedPointError(std::size_t dimension)
      : Error("fixed space is not one-dimensional (dimension " +
              std::to_string(dimension) + ")"),
        dimension_(dimension) {}

  std::size_t dimension() const noexcept { return dimension_; }

 private:
  std::size_t dimension_;
};

}  // namespace qergo
