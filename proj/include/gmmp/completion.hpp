#ifndef GMMP_COMPLETION_HPP
#define GMMP_COMPLETION_HPP

#include <cstddef>
#include <map>
#include <optional>
#include <vector>

#include "gmmp/hochschild.hpp"
#include "gmmp/hull.hpp"

namespace gmmp {

/// Nonunit basis word u of an r-pointed truncation -> rho_u(a_k) for every
/// basis element a_k of A, as matrices on the total module (zero outside the
/// block of u).
using ModuleDeformation = std::map<Word, std::vector<Matrix>>;

struct Lifting {
  /// Lift with all free parameters zero.
  ModuleDeformation particular;
  /// Basis of the solutions of the homogeneous equations (new words only).
  std::vector<ModuleDeformation> directions;
};

/// Solves the order-(level+1) homomorphism equations for the A-action on
/// S (x) (+M_i), given the action on words of degree <= level. Returns
/// nullopt when the partial deformation has no lift (or is itself not a
/// homomorphism below that order).
std::optional<Lifting> lift_module_structure(const FiniteAlgebra& A,
                                             const std::vector<ModuleRep>& modules,
                                             const FormalTruncation& S,
                                             const ModuleDeformation& partial, std::size_t level);

/// Independent first-order deformations in block (i, j): solutions over the
/// r-pointed dual numbers modulo the trivial ones rho*phi - phi*rho.
std::size_t first_order_deformations(const FiniteAlgebra& A, const std::vector<ModuleRep>& modules,
                                     std::uint32_t i, std::uint32_t j);

/// Block diagonal rho(a) on the total module.
Matrix total_action(const std::vector<ModuleRep>& modules, std::size_t a);

struct CompletionResult {
  std::vector<ExtClass> classes;
  CochainGmmp gmmp;
  HullResult hull;
  /// E (x)_{k^r} H: basis pairs (matrix unit of block (i, j), hull word of
  /// block (i, j)); the element basis is listed in `endomorphism_basis`.
  FiniteAlgebra endomorphisms;
  std::vector<std::pair<CochainCoord, Word>> endomorphism_basis;
  /// iota(a_k) in the endomorphism algebra.
  std::vector<SparseVector> iota;
  /// The induced deformation rho_u(a) for the hull basis words.
  ModuleDeformation deformation;
};

/// Completion of A in the simple modules: the hull of the Hochschild GMMP
/// data, the truncated endomorphism algebra and iota, with the homomorphism
/// property of iota and delta o iota = +rho_i verified (Error on failure).
CompletionResult complete(const FiniteAlgebra& A, const std::vector<ModuleRep>& modules,
                          std::size_t bound, const HullOptions& options = {});

/// delta: the part of an endomorphism at the unit words, as a total matrix.
Matrix delta(const CompletionResult& r, const SparseVector& element, std::size_t total_dim);

/// Generator counts equal dim Ext^1 blockwise and match the lifting oracle.
bool tangent_check(const CompletionResult& result, const CochainComplex& C);

/// One-dimensional simples of a truncation: the augmentation module, or
/// the vertex simples when the alphabet is graded.
std::vector<ModuleRep> vertex_simples(const FiniteAlgebra& A, const FormalTruncation& t);

/// GMMP data of k<S>/(F + m^{bound+1}) in its simple modules, with X the
/// coordinate functionals of the letters. Needs a minimal presentation.
CochainGmmp algebra_to_gmmp(const Presentation& p, std::size_t bound);

/// compute_hull(algebra_to_gmmp(p, bound)).
HullResult presentation_of_formal_algebra(const Presentation& p, std::size_t bound,
                                          const HullOptions& options = {});

}  // namespace gmmp

#endif
