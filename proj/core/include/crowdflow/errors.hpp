#pragma once

#include <stdexcept>
#include <string>

namespace crowdflow {

/// Base class for all crowdflow errors.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// Mobility/flux evaluated at (or below) the vacuum floor with a negative
/// exponent, where (rho/rho_bar)^a diverges.
class VacuumSingularity : public Error {
 public:
  using Error::Error;
};

/// Jump operation requested between states with equal density.
class DegenerateJump : public Error {
 public:
  using Error::Error;
};

/// Contact-curve formula evaluated at its pole rho = rho_bar.
class CriticalDensity : public Error {
 public:
  using Error::Error;
};

/// Both eigenvalues vanish (u_tilde = -I(t)); no case applies.
class FullDegeneracy : public Error {
 public:
  using Error::Error;
};

/// Delta construction requested for identical side states.
class NoJump : public Error {
 public:
  using Error::Error;
};

/// Momentum jump [rho*u_tilde] vanishes where the positive-exponent delta
/// ODE system requires dividing by it.
class MomentumJumpZero : public Error {
 public:
  using Error::Error;
};

/// Delta strength zeta(t) crossed below zero along a trajectory.
class StrengthNegative : public Error {
 public:
  using Error::Error;
};

/// No admissible (overcompressive) construction exists for the request.
class Inadmissible : public Error {
 public:
  using Error::Error;
};

/// Config text could not be parsed; message carries the line number.
class ParseError : public Error {
 public:
  using Error::Error;
};

/// Parsed config violated a scenario invariant.
class ValidationError : public Error {
 public:
  using Error::Error;
};

}  // namespace crowdflow
