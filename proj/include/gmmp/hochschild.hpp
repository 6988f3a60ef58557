#ifndef GMMP_HOCHSCHILD_HPP
#define GMMP_HOCHSCHILD_HPP

#include <cstddef>
#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "gmmp/algebra.hpp"
#include "gmmp/gmmp.hpp"

namespace gmmp {

/// Coordinates of a cochain basis element: the value on the basis tuple
/// `args` is the matrix unit at (row, col) of Hom(M_source, M_target).
struct CochainCoord {
  std::uint32_t source = 0;
  std::uint32_t target = 0;
  std::vector<std::size_t> args;
  std::size_t row = 0;
  std::size_t col = 0;
};

/// Hochschild cochains C^n(A, Hom(M_i, M_j)) for n = 0 .. max_level, all
/// blocks (i, j) side by side. Homomorphisms compose left to right
/// (row-vector matrices), so the coefficient algebra E = End(+M_i) has
/// block (i, j) * block (j, k) -> block (i, k), and
///
///   (df)(a_1..a_{n+1}) = rho(a_1) f(a_2..) + sum_i (-1)^i f(..a_i a_{i+1}..)
///                        + (-1)^{n+1} f(a_1..a_n) rho(a_{n+1}),
///   (f cup g)(a_1..a_{p+q}) = f(a_1..a_p) g(a_{p+1}..a_{p+q}).
///
/// With these signs d(f cup g) = df cup g + (-1)^p f cup dg.
class CochainComplex {
public:
  CochainComplex(FiniteAlgebra A, std::vector<ModuleRep> modules, std::size_t max_level);

  const FiniteAlgebra& algebra() const { return A_; }
  const std::vector<ModuleRep>& modules() const { return modules_; }
  Field field() const { return A_.field(); }
  std::uint32_t vertices() const { return static_cast<std::uint32_t>(modules_.size()); }
  std::size_t max_level() const { return max_level_; }

  std::size_t dim(std::size_t level) const;
  /// [first, last) of the block (i, j) inside C^level.
  std::pair<std::size_t, std::size_t> block_range(std::size_t level, std::uint32_t i,
                                                  std::uint32_t j) const;
  CochainCoord coordinate(std::size_t level, std::size_t index) const;
  std::size_t index(std::size_t level, const CochainCoord& c) const;
  std::string coordinate_name(std::size_t level, std::size_t index) const;

  /// d : C^level -> C^{level+1}, for level < max_level.
  const Matrix& differential(std::size_t level) const;
  SparseVector apply_d(std::size_t level, const SparseVector& f) const;

  SparseVector cup(std::size_t p, const SparseVector& f, std::size_t q, const SparseVector& g) const;

  /// dim of cohomology at `level` in block (i, j); needs level < max_level.
  std::size_t cohomology_dim(std::size_t level, std::uint32_t i, std::uint32_t j) const;

  /// Value f(a) in Hom(M_i, M_j) of a 1-cochain, as a matrix on the total
  /// space +M_i (zero outside the block).
  Matrix evaluate1(const SparseVector& f, std::size_t a) const;

  /// Offset of module i in the total module.
  std::size_t module_offset(std::uint32_t i) const { return offsets_.at(i); }
  std::size_t total_dim() const { return offsets_.back(); }

private:
  std::size_t block_size(std::size_t level, std::uint32_t i, std::uint32_t j) const;

  FiniteAlgebra A_;
  std::vector<ModuleRep> modules_;
  std::size_t max_level_;
  std::vector<std::size_t> offsets_;
  std::vector<std::size_t> powers_;
  /// Per level: start of each block, row-major over (i, j), plus the end.
  std::vector<std::vector<std::size_t>> block_start_;
  std::vector<Matrix> d_;
};

CochainComplex hochschild_complex(const FiniteAlgebra& A, const std::vector<ModuleRep>& modules,
                                  std::size_t max_level = 3);

/// One H^1 basis vector of block (source, target), as a cocycle in C^1.
struct ExtClass {
  std::uint32_t source = 0;
  std::uint32_t target = 0;
  std::size_t number = 1;
  SparseVector cocycle;
};

/// RREF-canonical representatives: the rows of the reduced echelon form of
/// Z^1 whose pivots are not leading positions of B^1, block by block.
std::vector<ExtClass> ext_basis(const CochainComplex& C);

/// The GMMP data (X in C^1, C^2, cup, d) in a basis of C^1 that starts with
/// the given cocycles, completed by coordinate vectors.
struct CochainGmmp {
  GmmpAlgebra algebra;
  /// Column k holds the k-th V basis vector in cochain coordinates.
  Matrix to_cochains;
};

CochainGmmp cochain_gmmp(const CochainComplex& C, const std::vector<ExtClass>& classes,
                         const std::vector<std::string>& letters);

/// Letters x(i,j,l) for a graded family (1-based), or t, t1, t2, ... when
/// there is a single module.
std::vector<std::string> default_letters(const std::vector<ExtClass>& classes, std::uint32_t vertices);

}  // namespace gmmp

#endif
