#pragma once

#include <stdexcept>
#include <string>

namespace stallings {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Text or letter data that does not describe a valid object.
class MalformedInput : public Error {
 public:
  using Error::Error;
};

/// Two operands live over alphabets of different rank.
class AlphabetMismatch : public Error {
 public:
  using Error::Error;
};

/// An assignment or tuple has the wrong number of entries.
class ArityMismatch : public Error {
 public:
  using Error::Error;
};

/// A search-size or degree limit would be exceeded.
class GuardViolation : public Error {
 public:
  using Error::Error;
};

/// A documented precondition of an operation does not hold.
class PreconditionViolation : public Error {
 public:
  using Error::Error;
};

}  // namespace stallings
