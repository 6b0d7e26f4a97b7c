#pragma once

#include <stdexcept>
#include <string>

namespace latproj {

/// Malformed input: wrong shapes, non-finite entries, a Gram form that is not an
/// inner product. The CLI maps these to exit code 2.
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Vector or matrix sizes that do not match the ambient dimension.
class DimensionError : public InputError {
 public:
  using InputError::InputError;
};

/// A documented precondition of an operation does not hold for the given arguments.
class PreconditionError : public InputError {
 public:
  using InputError::InputError;
};

/// Inputs are well formed but cannot be handled reliably in binary64 (conditioning
/// guard, non-convergence). The CLI maps these to exit code 3.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ConditioningError : public NumericalError {
 public:
  ConditioningError(const std::string& what, double condition)
      : NumericalError(what), condition_(condition) {}
  double condition() const noexcept { return condition_; }

 private:
  double condition_;
};

/// Two computations that must agree by construction disagree: a bug, not bad input.
class InternalError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace latproj
