#pragma once

#include <stdexcept>
#include <string>

namespace ctrlenergy {

/// Malformed input: bad dimensions, asymmetric matrix where symmetry is
/// required, out-of-range actuator index, unparsable document.
class InputError : public std::invalid_argument {
 public:
  explicit InputError(const std::string& what) : std::invalid_argument(what) {}
};

/// A computation could not be completed for numerical reasons.
class NumericalError : public std::runtime_error {
 public:
  explicit NumericalError(const std::string& what) : std::runtime_error(what) {}
};

/// An operation requiring a strictly stable matrix was given an unstable one.
class StabilityError : public NumericalError {
 public:
  explicit StabilityError(const std::string& what) : NumericalError(what) {}
};

/// A matrix that must be invertible is singular (or indefinite where positive
/// definiteness is required).
class SingularMatrixError : public NumericalError {
 public:
  explicit SingularMatrixError(const std::string& what) : NumericalError(what) {}
};

/// A randomized construction degenerated repeatedly.
class RandomnessError : public NumericalError {
 public:
  explicit RandomnessError(const std::string& what) : NumericalError(what) {}
};

}  // namespace ctrlenergy
