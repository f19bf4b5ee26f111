#pragma once

#include <stdexcept>
#include <string>

namespace hstab {

/// Base class for every failure raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A precondition on the arguments was violated.
class ArgumentError : public Error {
 public:
  using Error::Error;
};

/// A configured entry-count, coefficient-size or model-size cap was exceeded.
/// Raised instead of returning a possibly wrong answer.
class ResourceLimitError : public Error {
 public:
  using Error::Error;
};

/// Malformed input text or JSON. The message carries line/field context.
class ParseError : public Error {
 public:
  using Error::Error;
};

}  // namespace hstab
