#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace metanet {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed text input. `line()` is 1-based, 0 when unknown.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t line)
      : Error(line > 0 ? "line " + std::to_string(line) + ": " + what : what), line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

/// Input that parses but violates a domain invariant (self-loop, size mismatch, bad range).
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// Request exceeds a configured enumeration cap.
class CapacityError : public Error {
 public:
  using Error::Error;
};

}  // namespace metanet
