#pragma once

#include <stdexcept>
#include <string>

namespace bisteer {

/// Base class for all library errors.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Violated precondition: bad sizes, grid mismatch, out-of-range parameter.
class InvalidArgument : public Error {
public:
  using Error::Error;
};

/// Control schedule does not cover the requested interval, or its pieces
/// are inconsistent with the solver step.
class ScheduleError : public Error {
public:
  using Error::Error;
};

/// Non-finite state detected during time integration. Carries the step at
/// which the first non-finite value appeared.
class BlowUpError : public Error {
public:
  BlowUpError(const std::string& msg, long step) : Error(msg), step_(step) {}
  long step() const noexcept { return step_; }

private:
  long step_;
};

/// Configuration file or CLI contract violation.
class ConfigError : public Error {
public:
  using Error::Error;
};

}  // namespace bisteer
