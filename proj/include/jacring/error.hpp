#pragma once

#include <stdexcept>
#include <string>

namespace jacring {

/// Base of every exception raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Operands live in incompatible ambient spaces (dimension/generator count).
class ShapeError : public Error {
 public:
  using Error::Error;
};

/// A linear system that should be invertible turned out to be singular.
class DegenerateBasisError : public Error {
 public:
  using Error::Error;
};

class RangeError : public Error {
 public:
  using Error::Error;
};

/// Generator images for an induced algebra map are not of pure degree 1.
class InvalidMapError : public Error {
 public:
  using Error::Error;
};

/// Requested operation is only implemented on a restricted class of inputs.
class UnsupportedClassError : public Error {
 public:
  using Error::Error;
};

}  // namespace jacring
