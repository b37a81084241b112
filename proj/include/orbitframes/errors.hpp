#pragma once

#include <stdexcept>
#include <string>

namespace orbitframes {

/// Base of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed or out-of-domain input (zeros outside the disk, bad indices,
/// violated preconditions). The CLI maps these to exit code 2.
class InputError : public Error {
 public:
  using Error::Error;
};

/// A computation could not produce a trustworthy result (ill-conditioning,
/// overflow, rejected certificate). The CLI maps these to exit code 3.
class NumericalError : public Error {
 public:
  using Error::Error;
};

/// Evaluation too close to a pole of a Blaschke factor.
class PoleProximityError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

/// A certificate formula has no finite value for the given data
/// (e.g. zeros that are not uniformly separated, vanishing coefficients).
class CertificateError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

/// A candidate commutant element does not commute with the generator.
class CommutatorError : public NumericalError {
 public:
  CommutatorError(const std::string& what, double commutator_norm)
      : NumericalError(what), commutator_norm_(commutator_norm) {}

  double commutator_norm() const noexcept { return commutator_norm_; }

 private:
  double commutator_norm_;
};

/// The truncated frame has a synthesis kernel that is not shift invariant,
/// so no bounded generator reproduces it.
class NotBoundedlyGeneratedError : public NumericalError {
 public:
  NotBoundedlyGeneratedError(const std::string& what, double residual)
      : NumericalError(what), residual_(residual) {}

  double residual() const noexcept { return residual_; }

 private:
  double residual_;
};

/// A multiplier vanishes (below the floor) at some grid point.
class VanishingMultiplierError : public NumericalError {
 public:
  VanishingMultiplierError(const std::string& what, long grid_index)
      : NumericalError(what), grid_index_(grid_index) {}

  long grid_index() const noexcept { return grid_index_; }

 private:
  long grid_index_;
};

}  // namespace orbitframes
