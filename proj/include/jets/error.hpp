#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace jets {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed expression or presentation text.  `position` is a byte offset
/// into the offending string.
class ParseError : public Error {
 public:
  ParseError(const std::string& message, std::size_t position)
      : Error(message + " at position " + std::to_string(position)),
        position_(position) {}

  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

/// Operands live over different coefficient rings.
class RingMismatch : public Error {
 public:
  using Error::Error;
};

/// Well-formed input that violates an operation's precondition.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// An enumeration or Groebner computation exceeded its configured bound.
class BudgetExceeded : public Error {
 public:
  using Error::Error;
};

}  // namespace jets
