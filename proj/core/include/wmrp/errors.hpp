#pragma once

#include <stdexcept>
#include <string>

namespace wmrp {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Velocities that are incompatible with the no-lateral-slip constraint.
class ConstraintViolation : public Error {
 public:
  using Error::Error;
};

class NonFiniteInput : public Error {
 public:
  using Error::Error;
};

/// The integrated state blew up (non-finite or beyond the divergence guard).
class NonFiniteState : public Error {
 public:
  NonFiniteState(const std::string& what, double time)
      : Error(what + " at t=" + std::to_string(time)), time_(time) {}
  double time() const { return time_; }

 private:
  double time_;
};

/// Desired-heading derivatives requested inside the origin disk.
class OriginSingularity : public Error {
 public:
  using Error::Error;
};

/// A diagnostic was requested on a trajectory produced in an incompatible mode.
class WrongMode : public Error {
 public:
  using Error::Error;
};

/// The heading never settled, so there is no steady-state tail to analyse.
class NeverConverged : public Error {
 public:
  using Error::Error;
};

/// A parameter or gain violates its documented invariant.
class ValidationError : public Error {
 public:
  using Error::Error;
};

}  // namespace wmrp
