#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace cohav {

/// Bad input to a public operation (wrong dimension, N = 0, NaN angles, ...).
class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A numerical routine failed (eigensolver did not converge, norm drift).
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The requested quantity is not defined for this model kind.
class UnsupportedModel : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Parameter derivative leaves the qubit state space at a pure state.
class SingularityError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

/// Non-fatal outcomes that are reported as data rather than thrown.
enum class Signal {
  none,
  insensitive,  // observable mean does not depend on the parameter
  underflow,    // value below double range; reported as 0
  unbounded,    // zero Fisher information, variance bound is infinite
};

std::string_view to_string(Signal s);

}  // namespace cohav
