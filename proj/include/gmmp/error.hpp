#ifndef GMMP_ERROR_HPP
#define GMMP_ERROR_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace gmmp {

/// Base class of every error raised by the kernel.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

class FieldMismatch : public Error {
public:
  FieldMismatch() : Error("scalars from different fields mixed") {}
};

class AlphabetMismatch : public Error {
public:
  AlphabetMismatch() : Error("polynomials over different alphabets") {}
};

class DimensionMismatch : public Error {
public:
  using Error::Error;
};

/// A linear or algebraic system with no solution where one is required.
class MathError : public Error {
public:
  using Error::Error;
};

class InconsistentSystem : public MathError {
public:
  using MathError::MathError;
};

/// The defect equation d(v_u) = -o_u has no solution for the named word.
class DefectUnsolvable : public MathError {
public:
  DefectUnsolvable(std::string word, std::size_t degree)
      : MathError("defect equation unsolvable for word " + word + " at degree " +
                  std::to_string(degree)),
        word_(std::move(word)), degree_(degree) {}
  const std::string& word() const { return word_; }
  std::size_t degree() const { return degree_; }

private:
  std::string word_;
  std::size_t degree_;
};

/// Input violates a precondition of the requested construction.
class PreconditionError : public MathError {
public:
  using MathError::MathError;
};

class ParseError : public Error {
public:
  ParseError(std::size_t line, std::size_t column, const std::string& what)
      : Error(std::to_string(line) + ":" + std::to_string(column) + ": " + what),
        line_(line), column_(column) {}
  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

private:
  std::size_t line_;
  std::size_t column_;
};

}  // namespace gmmp

#endif
