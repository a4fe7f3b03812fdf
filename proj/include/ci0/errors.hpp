#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace ci0 {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Syntax error in polynomial text or a field descriptor; `position` is a
/// byte offset into the input.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t position)
      : Error(what + " (at position " + std::to_string(position) + ")"),
        position_(position) {}
  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

class ContextMismatch : public Error {
 public:
  using Error::Error;
};

class NotZeroDimensional : public Error {
 public:
  using Error::Error;
};

class NotLocal : public Error {
 public:
  using Error::Error;
};

class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// A mathematical identity that must hold failed to hold. Always a bug.
class InvariantViolation : public Error {
 public:
  using Error::Error;
};

/// A bounded search hit its cap before reaching a verdict.
class Inconclusive : public Error {
 public:
  using Error::Error;
};

class NotApplicable : public Error {
 public:
  using Error::Error;
};

}  // namespace ci0
