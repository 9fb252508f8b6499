#pragma once

// Shared error types and constants for the ultraslow library.

#include <stdexcept>
#include <string>

namespace ultraslow {

inline constexpr double kPi = 3.14159265358979323846264338327950288;

// Base for all numerical failures raised by the library.
class NumericalError : public std::runtime_error {
 public:
  explicit NumericalError(const std::string& msg) : std::runtime_error(msg) {}
};

// Adaptive refinement of a weighted alpha-integral failed to settle,
// signalling f*mu outside L^1.
class NonIntegrable : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

// Total mass of the weight is numerically zero.
class ZeroMass : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

// Bisection bracket for the gamma split could not be established.
class BracketFailure : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

// A Laplace-side r-integral did not converge at the requested tolerance.
class QuadratureDivergence : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

// Picard iteration exceeded its cap.
class NoConvergence : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

// Assembled Galerkin matrix failed the positive-definiteness check.
class NotSPD : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

// A per-step linear solve produced a non-finite result.
class SolveFailure : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

// Decay envelope evaluated below its validity floor.
class BelowValidity : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

// Too few samples for a least-squares fit.
class DegenerateFit : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

// Malformed experiment configuration.
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace ultraslow
