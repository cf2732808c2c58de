#pragma once

#include <stdexcept>
#include <string>

namespace cbasis {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input: bad JSON, wrong shapes, non-skew-symmetric matrices.
class ParseError : public Error {
 public:
  using Error::Error;
};

/// A precondition on an argument does not hold (dimension mismatch,
/// a reflection mirror that is not a root, a walk that is not a string).
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// A vertex or root index outside its valid range.
class IndexError : public Error {
 public:
  using Error::Error;
};

/// A construction or search that cannot produce its object
/// (no Z-basis, no companion, search exhausted, wrong Dynkin shape).
class ConstructionError : public Error {
 public:
  using Error::Error;
};

/// Exact integer arithmetic left the 64-bit range.
class OverflowError : public Error {
 public:
  using Error::Error;
};

}  // namespace cbasis
