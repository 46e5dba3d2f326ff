#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace biquad {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Operands disagree on (m, n) or a vector length does not match.
class DimensionError : public Error {
 public:
  using Error::Error;
};

/// Malformed rational literal, JSON document or certificate file.
class ParseError : public Error {
 public:
  using Error::Error;
};

/// An operation was called outside its documented domain.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// Raised by the diagonally dominant decomposition; `row()` is the first
/// violating flat row (0-based).
class NotDiagonallyDominantError : public PreconditionError {
 public:
  NotDiagonallyDominantError(std::size_t row, const std::string& what)
      : PreconditionError(what), row_(row) {}
  std::size_t row() const noexcept { return row_; }

 private:
  std::size_t row_;
};

/// Numerical backend failure (eigensolver did not converge).
class NumericalError : public Error {
 public:
  using Error::Error;
};

}  // namespace biquad
