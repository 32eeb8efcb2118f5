#pragma once

#include <stdexcept>
#include <string>

namespace memsig {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed textual or JSON input.
class ParseError : public Error {
 public:
  using Error::Error;
};

/// Incompatible shapes or sizes.
class ShapeError : public Error {
 public:
  using Error::Error;
};

/// A documented precondition does not hold (singular matrix, bad parity, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

}  // namespace memsig
