#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace ucs {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed edge-list input. Carries the 1-based line number.
class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : Error("line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

/// File could not be opened or read.
class IoError : public Error {
 public:
  using Error::Error;
};

class ValidationError : public Error {
 public:
  using Error::Error;
};

class DimensionError : public Error {
 public:
  using Error::Error;
};

/// Argument outside the domain of a formula or algorithm (e.g. ell <= n).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Numerical rank of W^{1/2}B disagrees with |V| - r.
class RankMismatchError : public Error {
 public:
  using Error::Error;
};

class SolverError : public Error {
 public:
  using Error::Error;
};

/// No unselected column passes the trace test.
class InfeasibleError : public Error {
 public:
  using Error::Error;
};

class DegenerateUpdateError : public Error {
 public:
  using Error::Error;
};

class CombinatorialLimitError : public Error {
 public:
  using Error::Error;
};

}  // namespace ucs
