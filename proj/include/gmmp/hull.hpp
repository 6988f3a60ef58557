#ifndef GMMP_HULL_HPP
#define GMMP_HULL_HPP

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "gmmp/gmmp.hpp"
#include "gmmp/quotient.hpp"

namespace gmmp {

/// Basis word u of the current truncation -> defect element v_u in V.
/// Letters map to their generator; units carry no entry.
using DefectAssignment = std::map<Word, SparseVector>;

struct HullOptions {
  /// Ordering of the hull letters; identity deglex on the generator order
  /// when absent.
  std::optional<Ordering> ordering;
};

struct HullResult {
  AlphabetPtr alphabet;
  Field field{};
  Ordering ordering;
  std::vector<std::string> generators;
  /// Truncations for N = 1 .. bound.
  std::vector<FormalTruncation> truncations;
  /// Defects of the last truncation (lower words keep their earlier values).
  DefectAssignment defects;
  std::optional<std::size_t> stabilized_at;
  /// dim of the truncation at N, for N = 0 .. bound.
  std::vector<std::size_t> dimension_sequence;
  /// Number of independent relations at each N = 1 .. bound.
  std::vector<std::size_t> relation_counts;

  const FormalTruncation& last() const { return truncations.back(); }
  std::size_t bound() const { return truncations.size(); }
};

/// Letters of the hull: one per generator of L, graded over k^r when L is.
AlphabetPtr hull_alphabet(const GmmpAlgebra& L);

/// H_1 = k<X>/m^2 with v_{x_i} = the i-th generator.
std::pair<FormalTruncation, DefectAssignment> hull_init(const GmmpAlgebra& L,
                                                        const HullOptions& options = {});

/// One degree of the iteration: builds H_{N+1} = k<X>/(m^{N+2} + mF + Fm),
/// evaluates the obstruction sum of v_{t1} cup v_{t2} over products of basis
/// words, projects it onto W / im d to update the relations, and solves
/// d(v_u) = -o_u for every new basis word u.
///
/// Throws DefectUnsolvable when some o_u is not in the image of d.
std::pair<FormalTruncation, DefectAssignment> hull_step(const GmmpAlgebra& L,
                                                        const FormalTruncation& current,
                                                        const DefectAssignment& defects);

/// Iterates hull_step up to `bound` and records stabilization: the smallest
/// n whose relation set is repeated unchanged at every later degree, with at
/// least two unchanged steps observed.
HullResult compute_hull(const GmmpAlgebra& L, std::size_t bound, const HullOptions& options = {});

/// The obstruction sum d(v_u) + sum v_{t1} cup v_{t2} expanded in the basis
/// of the truncation; coefficient per basis word (degree >= 2 only).
std::map<Word, SparseVector> deformation_residual(const GmmpAlgebra& L,
                                                  const FormalTruncation& truncation,
                                                  const DefectAssignment& defects);

/// True iff every coefficient of deformation_residual vanishes.
bool verify_defects(const GmmpAlgebra& L, const FormalTruncation& truncation,
                    const DefectAssignment& defects);

/// Relation scaled so its first term in ascending order has coefficient one.
NCPoly canonical_relation(const NCPoly& p, const Ordering& order);

}  // namespace gmmp

#endif
