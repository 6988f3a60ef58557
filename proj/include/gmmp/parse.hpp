#ifndef GMMP_PARSE_HPP
#define GMMP_PARSE_HPP

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "gmmp/algebra.hpp"
#include "gmmp/gmmp.hpp"
#include "gmmp/matrix.hpp"
#include "gmmp/quotient.hpp"

namespace gmmp {

/// Parser settings shared by every input format. `field` is used when the
/// input has no `field` statement; `force_field` overrides the statement.
struct ParseOptions {
  Field field = Field::rationals();
  bool force_field = false;
  /// Materialization degree for rule-based GMMP bases without `degree`.
  std::size_t degree = 4;
};

/// GMMP table file, one statement per line ('#' starts a comment):
///
///   field 0
///   V v0 v1 ...            basis of V; `W = V` identifies W with V
///   W w0 w1 ...
///   degrees 0 1 1 ...      optional grading of the V basis
///   basis words x,y        V = W = all words in x, y (lazy)
///   degree 3               materialization degree of `basis words`
///   cup concatenation      only with `basis words`
///   vertices 2             matrix grading over k^r
///   X v1 v2                generators; `X a@1,2` under `vertices`
///   cup a b = expr         one entry of the cup table
///   d a = expr             unlisted entries are zero
///
/// Expressions are sums of rational multiples of W symbols (or words).
GmmpAlgebra parse_gmmp(std::string_view text, const ParseOptions& options = {});

/// Presentation: statements separated by ';' or newlines.
///
///   field 5; r=2; gens x(1,2,1), y(2,1,1); rel x(1,2,1)*y(2,1,1); truncate 4
///
/// Ungraded generators are plain identifiers; e(i) is an idempotent.
Presentation parse_presentation(std::string_view text, const ParseOptions& options = {});

/// Parses a noncommutative polynomial over an existing alphabet.
NCPoly parse_polynomial(std::string_view text, const AlphabetPtr& alphabet, Field field);

struct AlgebraInput {
  FiniteAlgebra algebra;
  /// Set when the algebra was given as a truncated presentation.
  std::optional<FormalTruncation> truncation;
};

/// Structure constants:
///
///   field 0
///   basis 1 x x2
///   unit 1
///   mul x x = x2
///
/// Products with a basis unit are filled in. Alternatively a presentation
/// followed by `truncate N` gives k<S>/(F + m^{N+1}).
AlgebraInput parse_algebra(std::string_view text, const ParseOptions& options = {});

/// Modules over a parsed algebra:
///
///   module M1 dim 2
///   act x = [0 1; 0 0]
///
/// A basis element named 1 acts as the identity unless listed, products of
/// listed generators (names like x*y) are filled in, other elements act by
/// zero. The single line `simples` selects the vertex simples of a
/// truncated presentation.
std::vector<ModuleRep> parse_modules(std::string_view text, const AlgebraInput& algebra);

/// Linear relations among w_1..w_n:
///
///   field 0
///   n 3
///   rel 1 1 -1             one relation per line, optional `= c`
///   kappa 1 -1 0           rows of the quotient map, optional
struct RelmorphInput {
  Field field;
  std::size_t n = 0;
  Matrix relations;
  std::optional<SparseVector> rhs;
  std::optional<Matrix> kappa;
};

RelmorphInput parse_relmorph(std::string_view text, const ParseOptions& options = {});

/// `deglex`, `deglex:y,x`, `deglex:reversed` or `deglex:y,x:reversed`.
Ordering parse_ordering(std::string_view text, const Alphabet& alphabet);

}  // namespace gmmp

#endif
