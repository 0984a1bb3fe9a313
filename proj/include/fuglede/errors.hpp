#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace fuglede {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An argument is outside the operation's domain (e.g. a non-unit multiplier).
class ArgumentError : public Error {
 public:
  using Error::Error;
};

/// The operation needs group structure the input does not have
/// (CRT geometry on a non-squarefree modulus, coprime projection, ...).
class UnsupportedStructureError : public Error {
 public:
  using Error::Error;
};

/// A documented mathematical precondition was not met.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// Exact arithmetic produced something theory rules out; always a bug.
class InternalConsistencyError : public Error {
 public:
  using Error::Error;
};

/// A checked theorem failed on a concrete instance.
class TheoremViolationError : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t position)
      : Error(what + " at position " + std::to_string(position)), position_(position) {}
  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

}  // namespace fuglede
