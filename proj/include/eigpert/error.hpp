#ifndef EIGPERT_ERROR_HPP
#define EIGPERT_ERROR_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace eigpert {

/// Base class of every error thrown by the library.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Malformed matrix text. Line and column are 1-based; column 0 means
/// the error concerns the whole line.
class ParseError : public Error {
public:
  ParseError(const std::string& what, std::size_t line, std::size_t column)
      : Error("line " + std::to_string(line) + ", column " +
              std::to_string(column) + ": " + what),
        line_(line), column_(column) {}

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

private:
  std::size_t line_;
  std::size_t column_;
};

class DimensionError : public Error {
public:
  using Error::Error;
};

class InvalidArgument : public Error {
public:
  using Error::Error;
};

/// Raised when an operation requires a block-wise diagonalized
/// perturbation but was handed a raw one (or vice versa).
class ModeError : public Error {
public:
  using Error::Error;
};

/// Numerical preconditions of the perturbation formulas (spectral gaps,
/// strict ordering of in-block diagonals) do not hold.
class PreconditionError : public Error {
public:
  using Error::Error;
};

/// An eigenvalue group of A is too close to the rest of the spectrum
/// relative to the size of the perturbation.
class GapTooSmallError : public PreconditionError {
public:
  GapTooSmallError(const std::string& what, std::size_t block)
      : PreconditionError(what), block_(block) {}
  std::size_t block() const noexcept { return block_; }

private:
  std::size_t block_;
};

/// Two diagonal entries of F-hat inside one eigenvalue block coincide, so
/// the in-block rotation of the eigenvector derivative is undefined.
class DegenerateDirectionError : public PreconditionError {
public:
  DegenerateDirectionError(const std::string& what, std::size_t block)
      : PreconditionError(what), block_(block) {}
  std::size_t block() const noexcept { return block_; }

private:
  std::size_t block_;
};

class ConvergenceError : public Error {
public:
  ConvergenceError(const std::string& what, double off_diagonal_mass)
      : Error(what), off_diagonal_mass_(off_diagonal_mass) {}
  double off_diagonal_mass() const noexcept { return off_diagonal_mass_; }

private:
  double off_diagonal_mass_;
};

/// A convergence study could not produce a meaningful slope.
class StudyError : public Error {
public:
  using Error::Error;
};

} // namespace eigpert

#endif
