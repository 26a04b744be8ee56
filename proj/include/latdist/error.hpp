#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace latdist {

/// Base class for all errors raised by the library.
class error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input file or spec string. Carries the offending source and line.
class parse_error : public error {
 public:
  parse_error(const std::string& source, std::size_t line, const std::string& what)
      : error(source + ":" + std::to_string(line) + ": " + what), source_(source), line_(line) {}

  const std::string& source() const noexcept { return source_; }
  std::size_t line() const noexcept { return line_; }

 private:
  std::string source_;
  std::size_t line_;
};

/// Arguments that violate an operation's precondition.
class invalid_input : public error {
 public:
  using error::error;
};

/// A configured work budget would be (or was) exceeded.
class budget_exceeded : public error {
 public:
  using error::error;
};

/// Floating-point Gram-Schmidt data became unusable.
class numeric_failure : public error {
 public:
  using error::error;
};

}  // namespace latdist
