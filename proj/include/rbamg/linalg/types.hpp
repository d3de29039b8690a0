#pragma once

#include <complex>
#include <cstddef>
#include <stdexcept>
#include <string>

namespace rbamg {

/// All arithmetic is carried out in complex double precision; real inputs
/// are promoted on entry.
using Scalar = std::complex<double>;
using Index = std::size_t;

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Operand shapes do not agree.
class DimensionError : public Error {
 public:
  using Error::Error;
};

/// A factorization met a pivot below the relative singularity threshold.
class SingularError : public Error {
 public:
  SingularError(const std::string& what, Index pivot)
      : Error(what), pivot_(pivot) {}

  Index pivot() const noexcept { return pivot_; }

 private:
  Index pivot_;
};

/// Malformed input file or config; carries the 1-based line number.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t line)
      : Error("line " + std::to_string(line) + ": " + what),
        message_(what),
        line_(line) {}

  std::size_t line() const noexcept { return line_; }
  /// The message without the line prefix.
  const std::string& message() const noexcept { return message_; }

 private:
  std::string message_;
  std::size_t line_;
};

/// An operation was called outside the regime where it is defined
/// (violated structural premise, enumeration budget, spectral tie, ...).
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// An iterative or spectral procedure failed to produce a usable result.
class ConvergenceError : public Error {
 public:
  using Error::Error;
};

}  // namespace rbamg
