#ifndef GMMP_ALGEBRA_HPP
#define GMMP_ALGEBRA_HPP

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "gmmp/matrix.hpp"
#include "gmmp/quotient.hpp"

namespace gmmp {

/// Finite-dimensional associative unital algebra given by structure
/// constants on a named basis. Construction checks associativity on all
/// basis triples and the unit on all basis elements.
class FiniteAlgebra {
public:
  using Table = std::map<std::pair<std::size_t, std::size_t>, SparseVector>;

  FiniteAlgebra() = default;
  FiniteAlgebra(Field field, std::vector<std::string> names, Table products, SparseVector unit);

  Field field() const { return field_; }
  std::size_t dim() const { return names_.size(); }
  const std::vector<std::string>& names() const { return names_; }
  std::optional<std::size_t> index(const std::string& name) const;
  const SparseVector& unit() const { return unit_; }
  const SparseVector& product(std::size_t i, std::size_t j) const;
  SparseVector multiply(const SparseVector& a, const SparseVector& b) const;
  SparseVector basis_vector(std::size_t i) const;
  const Table& table() const { return products_; }

  /// Where the algebra came from, e.g. "k<x>/(x^3) truncated at 4".
  std::optional<std::string> provenance;

private:
  Field field_{};
  std::vector<std::string> names_;
  Table products_;
  SparseVector unit_;
};

/// The algebra spanned by the basis words of a truncation, multiplied by
/// concatenation followed by the normal form.
FiniteAlgebra algebra_of_truncation(const FormalTruncation& t);

/// k<S>/(F + m^{N+1}).
FiniteAlgebra truncated_algebra(const Presentation& p, std::size_t N);

/// Product algebra k x ... x k (r copies).
FiniteAlgebra split_semisimple(Field f, std::size_t r);

/// Upper-triangular n x n matrices on the matrix units e(i,j), i <= j.
FiniteAlgebra upper_triangular(Field f, std::size_t n);

/// Right A-module: basis index a -> matrix R_a with m.a = m R_a for row
/// vectors m, so that R_{ab} = R_a R_b.
struct ModuleRep {
  std::string name;
  std::size_t dim = 0;
  std::vector<Matrix> action;
};

/// Throws PreconditionError if the action is not a unital right module
/// structure for A.
void check_module(const FiniteAlgebra& A, const ModuleRep& M);

/// The submodule generated by v, as an echelon basis.
EchelonBasis spin(const ModuleRep& M, const SparseVector& v);

/// True iff M has no proper nonzero invariant subspace. Decided by spinning
/// vectors from the kernels of action elements, exhaustively over small
/// prime fields, and by Norton's test; throws PreconditionError when none
/// of these settles the question.
bool is_simple(const FiniteAlgebra& A, const ModuleRep& M);

/// The one-dimensional module on which the algebra acts through the
/// augmentation a -> coefficient of the unit word (for truncations).
ModuleRep augmentation_module(const FiniteAlgebra& A, const std::vector<Scalar>& character,
                              std::string name = "k");

}  // namespace gmmp

#endif
