#ifndef GMMP_MATRIX_HPP
#define GMMP_MATRIX_HPP

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "gmmp/scalar.hpp"

namespace gmmp {

/// Finitely supported coefficient map; zero entries are never stored.
class SparseVector {
public:
  using Map = std::map<std::size_t, Scalar>;
  using const_iterator = Map::const_iterator;

  SparseVector() = default;
  explicit SparseVector(Field f) : field_(f) {}

  Field field() const { return field_; }
  bool empty() const { return entries_.empty(); }
  std::size_t size() const { return entries_.size(); }
  const_iterator begin() const { return entries_.begin(); }
  const_iterator end() const { return entries_.end(); }
  const Map& entries() const { return entries_; }

  /// Smallest index with a nonzero entry; the vector must be nonempty.
  std::size_t leading() const { return entries_.begin()->first; }
  std::optional<std::size_t> max_index() const;

  Scalar get(std::size_t i) const;
  void set(std::size_t i, const Scalar& s);
  /// this[i] += s
  void add(std::size_t i, const Scalar& s);
  /// this += s * other
  void axpy(const Scalar& s, const SparseVector& other);
  void scale(const Scalar& s);

  friend bool operator==(const SparseVector& a, const SparseVector& b);

private:
  Field field_{};
  Map entries_;
};

SparseVector operator+(SparseVector a, const SparseVector& b);
SparseVector operator-(SparseVector a, const SparseVector& b);
SparseVector operator*(const Scalar& s, SparseVector v);

/// Sparse matrix stored by rows.
class Matrix {
public:
  Matrix() = default;
  Matrix(Field f, std::size_t rows, std::size_t cols);

  static Matrix identity(Field f, std::size_t n);
  static Matrix from_rows(Field f, std::size_t cols, std::vector<SparseVector> rows);
  static Matrix from_dense(Field f, const std::vector<std::vector<long>>& entries);

  Field field() const { return field_; }
  std::size_t rows() const { return rows_.size(); }
  std::size_t cols() const { return cols_; }

  Scalar get(std::size_t r, std::size_t c) const;
  void set(std::size_t r, std::size_t c, const Scalar& s);
  const SparseVector& row(std::size_t r) const { return rows_.at(r); }
  void set_row(std::size_t r, SparseVector v);
  /// Column c as a vector indexed by row.
  SparseVector column(std::size_t c) const;

  Matrix transpose() const;
  SparseVector apply(const SparseVector& v) const;
  bool is_zero() const;

  friend Matrix operator*(const Matrix& a, const Matrix& b);
  friend Matrix operator+(const Matrix& a, const Matrix& b);
  friend bool operator==(const Matrix& a, const Matrix& b);

  std::string str() const;

private:
  Field field_{};
  std::size_t cols_ = 0;
  std::vector<SparseVector> rows_;
};

/// Incrementally maintained reduced row-echelon basis of a subspace. The
/// pivot of a row is its smallest column index, so callers encode column
/// priority in the indices. Rows stay fully reduced, hence the final state
/// depends only on the spanned subspace, not on insertion order.
class EchelonBasis {
public:
  EchelonBasis() = default;
  explicit EchelonBasis(Field f) : field_(f) {}

  Field field() const { return field_; }
  std::size_t rank() const { return rows_.size(); }
  /// pivot column -> row with leading coefficient one
  const std::map<std::size_t, SparseVector>& rows() const { return rows_; }
  bool is_pivot(std::size_t col) const { return rows_.count(col) != 0; }

  /// Adds v to the span; returns false when v was already in it.
  bool insert(SparseVector v);
  /// Remainder of v after eliminating every pivot column.
  SparseVector reduce(SparseVector v) const;
  bool contains(const SparseVector& v) const { return reduce(v).empty(); }

private:
  Field field_{};
  std::map<std::size_t, SparseVector> rows_;
};

struct RrefResult {
  Matrix matrix;
  std::vector<std::size_t> pivots;
};

/// Reduced row-echelon form; pivots strictly increasing, zero rows last.
RrefResult rref(const Matrix& m);
std::size_t rank(const Matrix& m);
/// Basis of {v : m v = 0}, one vector per free column.
std::vector<SparseVector> nullspace(const Matrix& m);
/// One solution of a v = target with free variables zero, if consistent.
std::optional<SparseVector> solve_linear(const Matrix& a, const SparseVector& target);

}  // namespace gmmp

#endif
