#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace fracvex {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An argument lies outside the domain of an operation (negative base under a
/// non-integer power, division by zero, pole of Gamma, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

class AlphaMismatch : public Error {
 public:
  AlphaMismatch() : Error("alpha mismatch") {}
};

class OverflowError : public Error {
 public:
  OverflowError() : Error("overflow") {}
};

/// A documented precondition of a verifier was violated.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// The symbolic rule set cannot differentiate the given structure.
class RuleSetError : public Error {
 public:
  explicit RuleSetError(const std::string& what)
      : Error("out of rule set: " + what) {}
};

class ParseError : public Error {
 public:
  ParseError(const std::string& message, std::size_t offset,
             std::vector<std::string> expected);

  std::size_t offset() const { return offset_; }
  const std::vector<std::string>& expected() const { return expected_; }

 private:
  std::size_t offset_;
  std::vector<std::string> expected_;
};

}  // namespace fracvex
