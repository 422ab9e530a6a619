#pragma once

#include <stdexcept>
#include <string>

namespace fluidmatch {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Inputs violate a documented precondition (dimensions, box, cost structure).
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// The numerical machinery failed: pivot limit, lost feasibility, inconsistent
/// closed form, runaway curvature ladder.
class SolverError : public Error {
 public:
  using Error::Error;
};

/// Malformed file contents. Carries the 1-based line number when known.
class ParseError : public ValidationError {
 public:
  ParseError(const std::string& what, std::size_t line)
      : ValidationError(line > 0 ? "line " + std::to_string(line) + ": " + what : what),
        line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

}  // namespace fluidmatch
