#pragma once

#include <stdexcept>
#include <string>

namespace kchow {

/// Root of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Bad user input: malformed documents, violated preconditions. CLI exit code 2.
class InputError : public Error {
 public:
  using Error::Error;
};

/// An internal consistency or polynomiality check did not hold. CLI exit code 3.
class VerificationError : public Error {
 public:
  using Error::Error;
};

class ZeroPoint : public InputError {
 public:
  using InputError::InputError;
};

class DimensionMismatch : public InputError {
 public:
  using InputError::InputError;
};

class SchemaError : public InputError {
 public:
  using InputError::InputError;
};

class NonRationalCoordinate : public InputError {
 public:
  using InputError::InputError;
};

class SubspaceNotSpannedBySupport : public InputError {
 public:
  using InputError::InputError;
};

class SubspaceNotWeightHomogeneous : public InputError {
 public:
  using InputError::InputError;
};

class ZeroLeadingCoefficient : public InputError {
 public:
  using InputError::InputError;
};

/// The degree is too small for the support jets to impose independent conditions.
class JetsNotSeparated : public InputError {
 public:
  using InputError::InputError;
};

/// A polynomial subspace basis that is dependent over the rational-function field.
class MalformedInput : public InputError {
 public:
  using InputError::InputError;
};

class VerificationFailed : public VerificationError {
 public:
  using VerificationError::VerificationError;
};

class PolynomialityFailed : public VerificationError {
 public:
  using VerificationError::VerificationError;
};

class RankDrop : public VerificationError {
 public:
  using VerificationError::VerificationError;
};

class NotWeightHomogeneous : public VerificationError {
 public:
  using VerificationError::VerificationError;
};

}  // namespace kchow
