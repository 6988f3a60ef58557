#ifndef GMMP_RELATION_HPP
#define GMMP_RELATION_HPP

#include <cstddef>
#include <functional>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "gmmp/matrix.hpp"

namespace gmmp {

/// Echelon form of the linear relations defining a quotient W -> V, with
/// the relation morphism d_VW and the relation generators.
///
/// Positions after renumbering put the r pivot basis vectors first:
/// original index of renumbered position k is `permutation[k]`.
struct RelationData {
  std::size_t n = 0;
  std::size_t r = 0;
  std::vector<std::size_t> permutation;
  /// (i, j) -> beta_{i,j} in renumbered positions, i < r <= j < n.
  std::map<std::pair<std::size_t, std::size_t>, Scalar> beta;
  /// d_VW : W -> W in original indices; column j is d_VW(w_j).
  Matrix dVW;
  /// Relation generators f_1..f_r as coefficient vectors in original indices.
  std::vector<SparseVector> fgens;

  /// The map F : W -> W sending the i-th renumbered basis vector to f_i.
  Matrix F() const;
  /// Maps a renumbered position back to the original basis index.
  std::size_t original_index(std::size_t position) const { return permutation.at(position); }
};

/// Builds the relation data for the quotient of an n-dimensional W by the
/// row span of `relations` (each row a relation among w_1..w_n).
///
/// When `rhs` is given the rows are read as affine equations; a row reducing
/// to 0 = c with c != 0 raises InconsistentSystem, and any surviving nonzero
/// constant raises PreconditionError since a linear quotient needs the
/// homogeneous case.
RelationData relation_morphism(std::size_t n, const Matrix& relations,
                               const std::optional<SparseVector>& rhs = std::nullopt);

/// True iff im F = ker kappa, kappa being the quotient map W -> V.
bool check_exactness(const RelationData& rel, const Matrix& kappa);

/// Element of the completion prod_{b in B} k of a graded-basis vector space,
/// stored degree by degree up to an explicit materialization bound.
class FormalVector {
public:
  using Layer = SparseVector;
  using Generator = std::function<Layer(std::size_t degree)>;

  explicit FormalVector(Field f) : field_(f) {}

  Field field() const { return field_; }
  /// Highest degree with materialized coefficients, or nullopt if none.
  std::optional<std::size_t> materialized_degree() const { return bound_; }

  /// Materializes every degree up to `degree`, filling missing layers via
  /// `gen`. Existing layers are left untouched.
  void materialize(std::size_t degree, const Generator& gen);
  void set_layer(std::size_t degree, Layer layer);

  /// Throws DimensionMismatch for a degree above the materialized bound.
  const Layer& layer(std::size_t degree) const;
  Scalar coefficient(std::size_t degree, std::size_t index) const;

  FormalVector& operator+=(const FormalVector& o);
  void scale(const Scalar& s);

private:
  Field field_;
  std::optional<std::size_t> bound_;
  std::map<std::size_t, Layer> layers_;
};

}  // namespace gmmp

#endif
