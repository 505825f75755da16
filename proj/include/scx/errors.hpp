#pragma once

#include <stdexcept>
#include <string>

namespace scx {

/// Input that violates a documented precondition (shape, hermiticity,
/// positivity, normalization, unknown labels).
class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Parameter outside the mathematical domain of an operation (e.g. alpha = 1
/// for a Renyi divergence, epsilon >= 1 for smoothing).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// A configured budget (matrix dimension, number of type classes, number of
/// enumerated functions) would be exceeded.
class ResourceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An internal consistency check on a computed result failed.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input file.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace scx
