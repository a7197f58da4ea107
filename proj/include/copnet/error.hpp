#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace copnet {

/// Base class for every error raised by the toolkit.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Malformed textual input. `line()` is 1-based; 0 when not line-specific.
class ParseError : public Error {
public:
  ParseError(std::size_t line, const std::string &what)
      : Error(line ? "line " + std::to_string(line) + ": " + what : what), line_(line) {}

  std::size_t line() const noexcept { return line_; }

private:
  std::size_t line_;
};

/// A precondition of an operation was violated by its arguments.
class InvalidArgument : public Error {
public:
  using Error::Error;
};

} // namespace copnet
