#pragma once

#include <stdexcept>
#include <string>

namespace too {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Unknown or unregistered scheme identifier.
class RegistryError : public Error {
 public:
  using Error::Error;
};

/// A stateful scheme ran out of one-time keys.
class CapacityError : public Error {
 public:
  using Error::Error;
};

/// An argument lies outside the domain of the operation.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Inconsistent dimension or size parameters.
class DimensionError : public Error {
 public:
  using Error::Error;
};

/// Malformed serialized input.
class FormatError : public Error {
 public:
  using Error::Error;
};

/// Operation is not available in the current mode.
class UnsupportedOperation : public Error {
 public:
  using Error::Error;
};

/// Caller violated a documented precondition.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// A randomized procedure exhausted its retry budget.
class SamplingError : public Error {
 public:
  using Error::Error;
};

/// The trapdoor is unusable (e.g. a zero exponent).
class TrapdoorError : public Error {
 public:
  using Error::Error;
};

/// A collision that does not carry information (equal pairs, equal randomness).
class DegenerateCollision : public Error {
 public:
  using Error::Error;
};

/// An extractor produced output that fails its own postcondition.
class ExtractionError : public Error {
 public:
  using Error::Error;
};

}  // namespace too
