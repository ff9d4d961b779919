#pragma once

#include <stdexcept>
#include <string>

namespace gcinf {

// Base of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Operand dimensions disagree, or an operation is undefined in this dimension.
class DimensionError : public Error {
 public:
  using Error::Error;
};

// A metric, endomorphism or frame degenerated at a point (non-SPD metric,
// eigenvalue -1 of a shape operator, rank-deficient immersion, ...).
class DegenerateError : public Error {
 public:
  DegenerateError(const std::string& what, double smallest_eigenvalue)
      : Error(what), smallest_eigenvalue_(smallest_eigenvalue) {}
  explicit DegenerateError(const std::string& what) : DegenerateError(what, 0.0) {}

  double smallest_eigenvalue() const noexcept { return smallest_eigenvalue_; }

 private:
  double smallest_eigenvalue_;
};

// A tensor that must carry a symmetry does not, beyond tolerance.
class SymmetryError : public Error {
 public:
  using Error::Error;
};

// Evaluation left the domain of an elementary function (log of a
// non-positive number, division by zero, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

// Expression text could not be parsed. `column` is 1-based.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, int column)
      : Error(what + " (column " + std::to_string(column) + ")"), column_(column) {}

  int column() const noexcept { return column_; }

 private:
  int column_;
};

// A spec document failed schema or invariant validation.
class SpecError : public Error {
 public:
  using Error::Error;
};

}  // namespace gcinf
