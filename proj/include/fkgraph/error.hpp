#pragma once

#include <stdexcept>
#include <string>

namespace fkgraph {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed graph source. `line()` is 1-based, 0 when not line-oriented.
class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : Error(line ? "line " + std::to_string(line) + ": " + what : what),
        line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

/// An input violated an operation's documented precondition.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// A configured size cap (vertices, spectrum points) was exceeded.
class CapExceeded : public Error {
 public:
  using Error::Error;
};

/// A mathematical invariant the library relies on failed. Never expected.
class InvariantViolation : public Error {
 public:
  using Error::Error;
};

}  // namespace fkgraph
