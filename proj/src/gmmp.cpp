#include "gmmp/gmmp.hpp"

#include <set>

#include "gmmp/error.hpp"

namespace gmmp {

namespace {

const SparseVector& empty_vector(Field f) {
  static thread_local std::map<std::uint64_t, SparseVector> cache;
  return cache.try_emplace(f.characteristic, SparseVector(f)).first->second;
}

void check_w_vector(const SparseVector& v, std::size_t dim, Field f) {
  if (!(v.field() == f)) throw FieldMismatch();
  if (auto mx = v.max_index(); mx && *mx >= dim)
    throw DimensionMismatch("coefficient outside W");
}

}  // namespace

GmmpAlgebra::GmmpAlgebra(Field field, std::vector<std::string> v_names,
                         std::vector<std::string> w_names)
    : field_(field), v_names_(std::move(v_names)), w_names_(std::move(w_names)),
      v_degrees_(v_names_.size()), d_(v_names_.size(), SparseVector(field)) {}

std::optional<std::size_t> GmmpAlgebra::v_index(const std::string& name) const {
  for (std::size_t i = 0; i < v_names_.size(); ++i)
    if (v_names_[i] == name) return i;
  return std::nullopt;
}

std::optional<std::size_t> GmmpAlgebra::w_index(const std::string& name) const {
  for (std::size_t i = 0; i < w_names_.size(); ++i)
    if (w_names_[i] == name) return i;
  return std::nullopt;
}

void GmmpAlgebra::set_v_degrees(std::vector<std::size_t> degrees) {
  if (degrees.size() != dim_v()) throw DimensionMismatch("one degree per V basis element expected");
  for (std::size_t i = 0; i < degrees.size(); ++i) v_degrees_[i] = degrees[i];
}

std::optional<std::size_t> GmmpAlgebra::v_degree(std::size_t i) const { return v_degrees_.at(i); }

void GmmpAlgebra::set_cup(std::size_t i, std::size_t j, SparseVector value) {
  if (i >= dim_v() || j >= dim_v()) throw DimensionMismatch("cup index outside V");
  check_w_vector(value, dim_w(), field_);
  if (value.empty())
    cup_.erase({i, j});
  else
    cup_[{i, j}] = std::move(value);
}

const SparseVector& GmmpAlgebra::cup(std::size_t i, std::size_t j) const {
  auto it = cup_.find({i, j});
  return it == cup_.end() ? empty_vector(field_) : it->second;
}

SparseVector GmmpAlgebra::cup(const SparseVector& a, const SparseVector& b) const {
  SparseVector out(field_);
  for (const auto& [i, ca] : a)
    for (const auto& [j, cb] : b) {
      auto it = cup_.find({i, j});
      if (it != cup_.end()) out.axpy(ca * cb, it->second);
    }
  return out;
}

void GmmpAlgebra::set_d(std::size_t i, SparseVector value) {
  if (i >= dim_v()) throw DimensionMismatch("d index outside V");
  check_w_vector(value, dim_w(), field_);
  d_[i] = std::move(value);
}

const SparseVector& GmmpAlgebra::d(std::size_t i) const { return d_.at(i); }

SparseVector GmmpAlgebra::d(const SparseVector& v) const {
  SparseVector out(field_);
  for (const auto& [i, c] : v) out.axpy(c, d_.at(i));
  return out;
}

Matrix GmmpAlgebra::d_matrix() const {
  Matrix m(field_, dim_w(), dim_v());
  for (std::size_t j = 0; j < dim_v(); ++j)
    for (const auto& [i, c] : d_[j]) m.set(i, j, c);
  return m;
}

void GmmpAlgebra::set_generators(std::vector<GmmpGenerator> generators, std::uint32_t vertices) {
  std::set<std::size_t> seen;
  std::set<std::string> letters;
  for (const auto& g : generators) {
    if (g.v_index >= dim_v()) throw PreconditionError("generator outside V");
    if (!seen.insert(g.v_index).second)
      throw PreconditionError("generator " + v_names_[g.v_index] + " listed twice");
    if (!letters.insert(g.letter).second)
      throw PreconditionError("generator letter " + g.letter + " listed twice");
    if (g.vertices.has_value() != (vertices != 0))
      throw PreconditionError("generator grading does not match the vertex count");
    if (g.vertices && (g.vertices->first >= vertices || g.vertices->second >= vertices))
      throw PreconditionError("generator vertex out of range");
  }
  generators_ = std::move(generators);
  vertices_ = vertices;
}

void GmmpAlgebra::set_lazy(bool lazy, std::size_t materialized_degree) {
  lazy_ = lazy;
  materialized_degree_ = materialized_degree;
}

GmmpMorphism identity_morphism(const GmmpAlgebra& a) {
  return {Matrix::identity(a.field(), a.dim_v()), Matrix::identity(a.field(), a.dim_w())};
}

GmmpMorphism compose(const GmmpMorphism& second, const GmmpMorphism& first) {
  return {second.phi * first.phi, second.psi * first.psi};
}

bool check_morphism(const GmmpMorphism& m, const GmmpAlgebra& src, const GmmpAlgebra& dst,
                    std::size_t bound) {
  if (m.phi.rows() != dst.dim_v() || m.phi.cols() != src.dim_v() ||
      m.psi.rows() != dst.dim_w() || m.psi.cols() != src.dim_w())
    throw DimensionMismatch("morphism matrices do not match the algebras");
  const Field f = src.field();
  auto in_range = [&](std::size_t i) {
    auto deg = src.v_degree(i);
    return !deg || *deg <= bound;
  };
  std::vector<SparseVector> images;
  for (std::size_t i = 0; i < src.dim_v(); ++i) {
    SparseVector e(f);
    e.set(i, Scalar::one(f));
    images.push_back(m.phi.apply(e));
  }
  for (std::size_t i = 0; i < src.dim_v(); ++i) {
    if (!in_range(i)) continue;
    if (!(m.psi.apply(src.d(i)) == dst.d(images[i]))) return false;
    for (std::size_t j = 0; j < src.dim_v(); ++j) {
      if (!in_range(j)) continue;
      if (!(m.psi.apply(src.cup(i, j)) == dst.cup(images[i], images[j]))) return false;
    }
  }
  return true;
}

const char* to_string(ClassKind k) {
  switch (k) {
    case ClassKind::polynomial: return "polynomial";
    case ClassKind::formal: return "formal";
    case ClassKind::neither: return "neither";
  }
  return "neither";
}

Classification classify(const GmmpAlgebra& L, std::size_t bound) {
  if (bound < 1) throw PreconditionError("classification bound must be at least 1");
  const Field f = L.field();
  Classification out;
  out.witness_degree = bound;

  std::vector<SparseVector> monomials;
  if (L.identified()) {
    if (L.cup_unit()) {
      SparseVector u(f);
      u.set(*L.cup_unit(), Scalar::one(f));
      monomials.push_back(u);
    }
    std::vector<SparseVector> layer;
    for (const auto& g : L.generators()) {
      SparseVector x(f);
      x.set(g.v_index, Scalar::one(f));
      layer.push_back(x);
    }
    monomials.insert(monomials.end(), layer.begin(), layer.end());
    for (std::size_t len = 2; len <= bound; ++len) {
      std::vector<SparseVector> next;
      for (const auto& m : layer)
        for (const auto& g : L.generators()) {
          SparseVector x(f);
          x.set(g.v_index, Scalar::one(f));
          next.push_back(L.cup(m, x));
        }
      monomials.insert(monomials.end(), next.begin(), next.end());
      layer = std::move(next);
    }
  } else if (bound >= 2) {
    for (const auto& a : L.generators())
      for (const auto& b : L.generators()) {
        SparseVector x(f), y(f);
        x.set(a.v_index, Scalar::one(f));
        y.set(b.v_index, Scalar::one(f));
        monomials.push_back(L.cup(x, y));
      }
  }

  // Distinct directions only: zero monomials and proportional repeats carry
  // no information about independence.
  std::set<std::vector<std::pair<std::size_t, std::string>>> directions;
  EchelonBasis span(f);
  for (auto m : monomials) {
    if (m.empty()) continue;
    m.scale(m.get(m.leading()).inverse());
    std::vector<std::pair<std::size_t, std::string>> key;
    for (const auto& [i, c] : m) key.emplace_back(i, c.str());
    if (!directions.insert(key).second) continue;
    if (!span.insert(m)) {
      out.reason = "cup-monomials are linearly dependent";
      return out;
    }
  }
  for (std::size_t i = 0; i < L.dim_v(); ++i) {
    if (!span.contains(L.d(i))) {
      out.reason = "d(" + L.v_names()[i] + ") lies outside the span of the cup-monomials";
      return out;
    }
  }
  out.kind = L.lazy() ? ClassKind::formal : ClassKind::polynomial;
  return out;
}

}  // namespace gmmp
