#include "gmmp/relation.hpp"

#include <algorithm>

#include "gmmp/error.hpp"

namespace gmmp {

Matrix RelationData::F() const {
  Field f = dVW.field();
  Matrix out(f, n, n);
  for (std::size_t i = 0; i < r; ++i)
    for (const auto& [row, s] : fgens[i]) out.set(row, permutation[i], s);
  return out;
}

RelationData relation_morphism(std::size_t n, const Matrix& relations,
                               const std::optional<SparseVector>& rhs) {
  if (relations.cols() > n)
    throw DimensionMismatch("relation matrix has " + std::to_string(relations.cols()) +
                            " columns but W has dimension " + std::to_string(n));
  const Field f = relations.field();
  if (rhs && rhs->max_index() && *rhs->max_index() >= relations.rows())
    throw DimensionMismatch("constant vector longer than the relation list");

  EchelonBasis basis(f);
  for (std::size_t i = 0; i < relations.rows(); ++i) {
    SparseVector row = relations.row(i);
    if (rhs) row.set(n, rhs->get(i));
    basis.insert(std::move(row));
  }
  if (basis.is_pivot(n)) throw InconsistentSystem("relations reduce to 1 = 0");
  for (const auto& [pivot, row] : basis.rows())
    if (!row.get(n).is_zero())
      throw PreconditionError("affine relation: a linear quotient needs homogeneous relations");

  RelationData out;
  out.n = n;
  out.r = basis.rank();
  std::vector<bool> is_pivot(n, false);
  for (const auto& [pivot, row] : basis.rows()) {
    out.permutation.push_back(pivot);
    is_pivot[pivot] = true;
    out.fgens.push_back(row);
  }
  for (std::size_t j = 0; j < n; ++j)
    if (!is_pivot[j]) out.permutation.push_back(j);

  std::vector<std::size_t> position(n);
  for (std::size_t k = 0; k < n; ++k) position[out.permutation[k]] = k;

  out.dVW = Matrix(f, n, n);
  for (std::size_t i = 0; i < out.r; ++i) {
    const std::size_t wi = out.permutation[i];
    out.dVW.set(wi, wi, Scalar::one(f));
    for (const auto& [col, s] : out.fgens[i]) {
      if (col == wi) continue;
      out.beta.emplace(std::make_pair(i, position[col]), s);
      out.dVW.set(col, wi, -s);
    }
  }
  return out;
}

bool check_exactness(const RelationData& rel, const Matrix& kappa) {
  if (kappa.cols() != rel.n)
    throw DimensionMismatch("kappa has " + std::to_string(kappa.cols()) +
                            " columns, W has dimension " + std::to_string(rel.n));
  for (const auto& g : rel.fgens)
    if (!kappa.apply(g).empty()) return false;
  Matrix gens = Matrix::from_rows(kappa.field(), rel.n, rel.fgens);
  return rank(gens) == rel.n - rank(kappa);
}

void FormalVector::materialize(std::size_t degree, const Generator& gen) {
  std::size_t start = bound_ ? *bound_ + 1 : 0;
  for (std::size_t d = start; d <= degree; ++d) {
    if (!layers_.count(d)) {
      Layer l = gen(d);
      if (!(l.field() == field_)) throw FieldMismatch();
      if (!l.empty()) layers_.emplace(d, std::move(l));
    }
  }
  if (!bound_ || degree > *bound_) bound_ = degree;
}

void FormalVector::set_layer(std::size_t degree, Layer layer) {
  if (!(layer.field() == field_)) throw FieldMismatch();
  if (!bound_ || degree > *bound_)
    throw DimensionMismatch("degree " + std::to_string(degree) + " is not materialized");
  if (layer.empty())
    layers_.erase(degree);
  else
    layers_[degree] = std::move(layer);
}

const FormalVector::Layer& FormalVector::layer(std::size_t degree) const {
  static thread_local std::map<std::uint64_t, Layer> empties;
  if (!bound_ || degree > *bound_)
    throw DimensionMismatch("degree " + std::to_string(degree) + " is not materialized");
  auto it = layers_.find(degree);
  if (it != layers_.end()) return it->second;
  auto [e, _] = empties.try_emplace(field_.characteristic, Layer(field_));
  return e->second;
}

Scalar FormalVector::coefficient(std::size_t degree, std::size_t index) const {
  return layer(degree).get(index);
}

FormalVector& FormalVector::operator+=(const FormalVector& o) {
  if (!(o.field_ == field_)) throw FieldMismatch();
  if (o.bound_ && (!bound_ || *o.bound_ < *bound_)) bound_ = o.bound_;
  if (!o.bound_) bound_.reset();
  for (const auto& [d, l] : o.layers_) {
    auto& mine = layers_.try_emplace(d, Layer(field_)).first->second;
    mine.axpy(Scalar::one(field_), l);
    if (mine.empty()) layers_.erase(d);
  }
  if (bound_)
    for (auto it = layers_.upper_bound(*bound_); it != layers_.end();) it = layers_.erase(it);
  return *this;
}

void FormalVector::scale(const Scalar& s) {
  for (auto it = layers_.begin(); it != layers_.end();) {
    it->second.scale(s);
    it = it->second.empty() ? layers_.erase(it) : std::next(it);
  }
}

}  // namespace gmmp
