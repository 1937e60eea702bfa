#pragma once

#include <stdexcept>
#include <string>

namespace partrace {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Precondition violated by the caller (bad discriminant, tau below the real axis, ...).
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

// An evaluator was asked for a value too close to a pole of the requested function.
class PoleProximity : public Error {
 public:
  using Error::Error;
};

// Working precision or truncation was insufficient and escalation hit its cap.
class PrecisionExhausted : public Error {
 public:
  using Error::Error;
};

// A numerical value could not be identified as an exact integer.
class RecognitionFailure : public Error {
 public:
  RecognitionFailure(const std::string& what, std::size_t index)
      : Error(what), index_(index) {}
  std::size_t index() const { return index_; }

 private:
  std::size_t index_;
};

class ParseError : public Error {
 public:
  using Error::Error;
};

// Loaded or computed data breaks a structural invariant.
class InvariantViolation : public Error {
 public:
  using Error::Error;
};

// A condition that holds by theory failed; indicates a bug, not bad input.
class InternalError : public Error {
 public:
  using Error::Error;
};

}  // namespace partrace
