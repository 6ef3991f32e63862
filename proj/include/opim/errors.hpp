#pragma once

#include <stdexcept>
#include <string>

namespace opim {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// divide_by_x applied to a polynomial with p(0) != 0.
class NonzeroConstantTerm : public Error {
 public:
  using Error::Error;
};

/// Integration bounds with a > b.
class InvalidInterval : public Error {
 public:
  using Error::Error;
};

class UnknownProblem : public Error {
 public:
  using Error::Error;
};

/// A structural invariant of the iteration was violated; indicates a bug or
/// an inconsistent problem definition rather than bad user input.
class InternalInvariantBreach : public Error {
 public:
  using Error::Error;
};

/// Newton step could not be computed (rank-deficient Jacobian).
class SingularJacobian : public Error {
 public:
  using Error::Error;
};

class SeriesBreakdown : public Error {
 public:
  using Error::Error;
};

class StepUnderflow : public Error {
 public:
  using Error::Error;
};

/// Malformed configuration file, option value or coefficient string.
class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace opim
