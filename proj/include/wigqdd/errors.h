#pragma once

#include <stdexcept>
#include <string>

namespace wigqdd {

/// Invalid configuration or input data (CLI exit code 2).
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Base of every failure raised while computing (CLI exit code 3).
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class GridMismatch : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

/// A field expected to live in the zero-density subspace carries mass.
class NonZeroMass : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class EllipticityViolation : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class StabilityViolation : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class QuadratureNotConverged : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class TimeNotInTrajectory : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

/// Order fit is underdetermined or sits on the discretization floor.
class FitDegenerate : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

}  // namespace wigqdd
