#pragma once

#include <stdexcept>
#include <string>

namespace vss {

/// Bad configuration input (JSON syntax, missing fields, malformed flags).
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Argument outside the domain of an operation.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

class InvalidArgument : public DomainError {
 public:
  using DomainError::DomainError;
};

/// Quadrature failure, non-finite values, or a singular evaluation.
class NumericError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Frequency grid too coarse for the narrowest feature of a state.
class ResolutionError : public NumericError {
 public:
  using NumericError::NumericError;
};

class DegenerateStateError : public NumericError {
 public:
  using NumericError::NumericError;
};

}  // namespace vss
