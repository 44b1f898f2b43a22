#pragma once

#include <stdexcept>
#include <string>

namespace subrank {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Two values built over different fields were combined.
class FieldMismatchError : public Error {
 public:
  using Error::Error;
};

/// A valuation or coefficient could not be certified at the working precision.
class PrecisionError : public Error {
 public:
  using Error::Error;
};

/// The determinant is exactly zero.
class SingularError : public Error {
 public:
  using Error::Error;
};

/// Operand shapes do not fit together.
class ShapeError : public Error {
 public:
  using Error::Error;
};

/// A limit at t -> 0 (or t -> infinity) does not exist.
class NoLimitError : public Error {
 public:
  using Error::Error;
};

/// Greedy placement of planted blocks ran out of room, or (n, r) violates the fit condition.
class PlacementError : public Error {
 public:
  using Error::Error;
};

/// The two limits of a Hilbert-Mumford witness disagree.
class WitnessVerificationFailure : public Error {
 public:
  using Error::Error;
};

/// Malformed input (parse errors, invalid parameters).
class InputError : public Error {
 public:
  using Error::Error;
};

}  // namespace subrank
