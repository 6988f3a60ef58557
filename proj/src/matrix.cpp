#include "gmmp/matrix.hpp"

#include <sstream>

#include "gmmp/error.hpp"

namespace gmmp {

std::optional<std::size_t> SparseVector::max_index() const {
  if (entries_.empty()) return std::nullopt;
  return entries_.rbegin()->first;
}

Scalar SparseVector::get(std::size_t i) const {
  auto it = entries_.find(i);
  return it == entries_.end() ? Scalar::zero(field_) : it->second;
}

void SparseVector::set(std::size_t i, const Scalar& s) {
  if (!(s.field() == field_)) throw FieldMismatch();
  if (s.is_zero())
    entries_.erase(i);
  else
    entries_[i] = s;
}

void SparseVector::add(std::size_t i, const Scalar& s) {
  if (!(s.field() == field_)) throw FieldMismatch();
  if (s.is_zero()) return;
  auto [it, inserted] = entries_.try_emplace(i, s);
  if (!inserted) {
    it->second += s;
    if (it->second.is_zero()) entries_.erase(it);
  }
}

void SparseVector::axpy(const Scalar& s, const SparseVector& other) {
  if (!(other.field_ == field_)) throw FieldMismatch();
  if (s.is_zero()) return;
  for (const auto& [i, c] : other.entries_) add(i, s * c);
}

void SparseVector::scale(const Scalar& s) {
  if (s.is_zero()) {
    entries_.clear();
    return;
  }
  for (auto& [i, c] : entries_) c *= s;
}

bool operator==(const SparseVector& a, const SparseVector& b) {
  if (!(a.field_ == b.field_)) throw FieldMismatch();
  return a.entries_ == b.entries_;
}

SparseVector operator+(SparseVector a, const SparseVector& b) {
  a.axpy(Scalar::one(a.field()), b);
  return a;
}

SparseVector operator-(SparseVector a, const SparseVector& b) {
  a.axpy(-Scalar::one(a.field()), b);
  return a;
}

SparseVector operator*(const Scalar& s, SparseVector v) {
  v.scale(s);
  return v;
}

Matrix::Matrix(Field f, std::size_t rows, std::size_t cols)
    : field_(f), cols_(cols), rows_(rows, SparseVector(f)) {}

Matrix Matrix::identity(Field f, std::size_t n) {
  Matrix m(f, n, n);
  for (std::size_t i = 0; i < n; ++i) m.set(i, i, Scalar::one(f));
  return m;
}

Matrix Matrix::from_rows(Field f, std::size_t cols, std::vector<SparseVector> rows) {
  Matrix m(f, 0, cols);
  for (auto& r : rows) {
    if (!(r.field() == f)) throw FieldMismatch();
    if (auto mx = r.max_index(); mx && *mx >= cols)
      throw DimensionMismatch("row entry outside column range");
    m.rows_.push_back(std::move(r));
  }
  return m;
}

Matrix Matrix::from_dense(Field f, const std::vector<std::vector<long>>& entries) {
  std::size_t cols = entries.empty() ? 0 : entries.front().size();
  Matrix m(f, entries.size(), cols);
  for (std::size_t r = 0; r < entries.size(); ++r) {
    if (entries[r].size() != cols) throw DimensionMismatch("ragged dense matrix");
    for (std::size_t c = 0; c < cols; ++c) m.set(r, c, Scalar(f, entries[r][c]));
  }
  return m;
}

Scalar Matrix::get(std::size_t r, std::size_t c) const {
  if (r >= rows() || c >= cols_) throw DimensionMismatch("matrix index out of range");
  return rows_[r].get(c);
}

void Matrix::set(std::size_t r, std::size_t c, const Scalar& s) {
  if (r >= rows() || c >= cols_) throw DimensionMismatch("matrix index out of range");
  rows_[r].set(c, s);
}

void Matrix::set_row(std::size_t r, SparseVector v) {
  if (r >= rows()) throw DimensionMismatch("row index out of range");
  if (auto mx = v.max_index(); mx && *mx >= cols_)
    throw DimensionMismatch("row entry outside column range");
  rows_[r] = std::move(v);
}

SparseVector Matrix::column(std::size_t c) const {
  SparseVector out(field_);
  for (std::size_t r = 0; r < rows(); ++r) out.set(r, rows_[r].get(c));
  return out;
}

Matrix Matrix::transpose() const {
  Matrix t(field_, cols_, rows());
  for (std::size_t r = 0; r < rows(); ++r)
    for (const auto& [c, s] : rows_[r]) t.rows_[c].set(r, s);
  return t;
}

SparseVector Matrix::apply(const SparseVector& v) const {
  SparseVector out(field_);
  for (std::size_t r = 0; r < rows(); ++r) {
    Scalar acc = Scalar::zero(field_);
    for (const auto& [c, s] : rows_[r]) {
      if (c >= cols_) continue;
      auto it = v.entries().find(c);
      if (it != v.end()) acc += s * it->second;
    }
    out.set(r, acc);
  }
  if (auto mx = v.max_index(); mx && *mx >= cols_)
    throw DimensionMismatch("vector longer than matrix width");
  return out;
}

bool Matrix::is_zero() const {
  for (const auto& r : rows_)
    if (!r.empty()) return false;
  return true;
}

Matrix operator*(const Matrix& a, const Matrix& b) {
  if (a.cols() != b.rows()) throw DimensionMismatch("matrix product shape mismatch");
  if (!(a.field() == b.field())) throw FieldMismatch();
  Matrix out(a.field(), a.rows(), b.cols());
  for (std::size_t r = 0; r < a.rows(); ++r) {
    SparseVector acc(a.field());
    for (const auto& [k, s] : a.row(r)) acc.axpy(s, b.row(k));
    out.rows_[r] = std::move(acc);
  }
  return out;
}

Matrix operator+(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw DimensionMismatch("matrix sum shape mismatch");
  Matrix out = a;
  for (std::size_t r = 0; r < a.rows(); ++r) out.rows_[r].axpy(Scalar::one(a.field()), b.row(r));
  return out;
}

bool operator==(const Matrix& a, const Matrix& b) {
  return a.field_ == b.field_ && a.cols_ == b.cols_ && a.rows_ == b.rows_;
}

std::string Matrix::str() const {
  std::ostringstream os;
  for (std::size_t r = 0; r < rows(); ++r) {
    os << (r ? "\n[" : "[");
    for (std::size_t c = 0; c < cols_; ++c) os << (c ? " " : "") << rows_[r].get(c);
    os << "]";
  }
  return os.str();
}

SparseVector EchelonBasis::reduce(SparseVector v) const {
  if (!(v.field() == field_)) throw FieldMismatch();
  // Rows are fully reduced, so eliminating pivots in increasing order never
  // reintroduces an earlier pivot.
  auto it = v.begin();
  while (it != v.end()) {
    auto row = rows_.find(it->first);
    if (row == rows_.end()) {
      ++it;
      continue;
    }
    std::size_t col = it->first;
    v.axpy(-it->second, row->second);
    it = v.entries().upper_bound(col);
  }
  return v;
}

bool EchelonBasis::insert(SparseVector v) {
  v = reduce(std::move(v));
  if (v.empty()) return false;
  std::size_t pivot = v.leading();
  v.scale(v.get(pivot).inverse());
  for (auto& [p, row] : rows_) {
    Scalar c = row.get(pivot);
    if (!c.is_zero()) row.axpy(-c, v);
  }
  rows_.emplace(pivot, std::move(v));
  return true;
}

RrefResult rref(const Matrix& m) {
  EchelonBasis basis(m.field());
  for (std::size_t r = 0; r < m.rows(); ++r) basis.insert(m.row(r));
  RrefResult out{Matrix(m.field(), m.rows(), m.cols()), {}};
  std::size_t r = 0;
  for (const auto& [pivot, row] : basis.rows()) {
    out.matrix.set_row(r++, row);
    out.pivots.push_back(pivot);
  }
  return out;
}

std::size_t rank(const Matrix& m) {
  EchelonBasis basis(m.field());
  for (std::size_t r = 0; r < m.rows(); ++r) basis.insert(m.row(r));
  return basis.rank();
}

std::vector<SparseVector> nullspace(const Matrix& m) {
  EchelonBasis basis(m.field());
  for (std::size_t r = 0; r < m.rows(); ++r) basis.insert(m.row(r));
  std::vector<SparseVector> out;
  const Scalar one = Scalar::one(m.field());
  for (std::size_t free = 0; free < m.cols(); ++free) {
    if (basis.is_pivot(free)) continue;
    SparseVector v(m.field());
    v.set(free, one);
    for (const auto& [pivot, row] : basis.rows()) {
      Scalar c = row.get(free);
      if (!c.is_zero()) v.set(pivot, -c);
    }
    out.push_back(std::move(v));
  }
  return out;
}

std::optional<SparseVector> solve_linear(const Matrix& a, const SparseVector& target) {
  if (auto mx = target.max_index(); mx && *mx >= a.rows())
    throw DimensionMismatch("target longer than the number of equations");
  if (!(target.field() == a.field())) throw FieldMismatch();
  const std::size_t aug = a.cols();
  EchelonBasis basis(a.field());
  for (std::size_t r = 0; r < a.rows(); ++r) {
    SparseVector row = a.row(r);
    row.set(aug, target.get(r));
    basis.insert(std::move(row));
  }
  if (basis.is_pivot(aug)) return std::nullopt;
  SparseVector x(a.field());
  for (const auto& [pivot, row] : basis.rows()) x.set(pivot, row.get(aug));
  return x;
}

}  // namespace gmmp
