#ifndef PTDARBOUX_ERRORS_HPP
#define PTDARBOUX_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace ptdarboux {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Argument sits on (or numerically on) a pole: gamma at a nonpositive
/// integer, a vanishing Pochhammer denominator, or a node of a seed state.
class PoleError : public Error {
 public:
  using Error::Error;
};

/// Model parameters violate a construction invariant.
class ParameterError : public Error {
 public:
  using Error::Error;
};

/// Operation requested outside the regime it is defined for.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Quantum number outside the normalizable range.
class RangeError : public Error {
 public:
  using Error::Error;
};

/// Non-finite values or a failed dense eigensolve.
class NumericalError : public Error {
 public:
  using Error::Error;
};

}  // namespace ptdarboux

#endif  // PTDARBOUX_ERRORS_HPP
