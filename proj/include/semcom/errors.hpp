#pragma once

#include <stdexcept>
#include <string>

namespace semcom {

// Base class for all library errors.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ZeroVectorError : public Error {
 public:
  using Error::Error;
};

class DimensionMismatchError : public Error {
 public:
  using Error::Error;
};

class EmptyMemoryError : public Error {
 public:
  using Error::Error;
};

class NonPositiveBetaError : public Error {
 public:
  using Error::Error;
};

class InvalidHitError : public Error {
 public:
  using Error::Error;
};

class InvalidDimsError : public Error {
 public:
  using Error::Error;
};

class InfeasibleSeparationError : public Error {
 public:
  using Error::Error;
};

class LengthMismatchError : public Error {
 public:
  using Error::Error;
};

class DivByZeroError : public Error {
 public:
  using Error::Error;
};

class EmptyCountsError : public Error {
 public:
  using Error::Error;
};

// No grid point satisfies the distortion constraint.
class InfeasibleError : public Error {
 public:
  using Error::Error;
};

class NoMatchedPairError : public Error {
 public:
  using Error::Error;
};

// Parameters violate the preconditions of a theorem check.
class ConditionViolationError : public Error {
 public:
  using Error::Error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace semcom
