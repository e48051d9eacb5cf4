#pragma once

#include <stdexcept>
#include <string>

namespace qcluster {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

/// Exact division failed: the numerator is not a right multiple of the divisor.
class NotDivisible : public Error {
 public:
  using Error::Error;
};

class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// An internal consistency check failed. Indicates a bug, never bad input.
class InternalError : public Error {
 public:
  using Error::Error;
};

class NonUnitLeading : public Error {
 public:
  using Error::Error;
};

/// No compatible Lambda exists within the search bound.
class NoneFound : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  using Error::Error;
};

}  // namespace qcluster
