#ifndef GMMP_QUOTIENT_HPP
#define GMMP_QUOTIENT_HPP

#include <cstddef>
#include <map>
#include <memory>
#include <span>
#include <utility>
#include <vector>

#include "gmmp/matrix.hpp"
#include "gmmp/word.hpp"

namespace gmmp {

/// A presented algebra k<S>/F, materialized up to `degree_bound`.
struct Presentation {
  AlphabetPtr alphabet;
  Field field{};
  std::vector<NCPoly> relations;
  std::size_t degree_bound = 0;

  /// Throws PreconditionError if a relation has a nonzero constant term or
  /// lives over another alphabet.
  void validate() const;
};

/// All words of degree <= N indexed in elimination order: by increasing
/// degree, and within a degree from the largest word (under the ordering)
/// down. Row reduction pivots on the smallest index, so lower-degree words
/// and, within a degree, larger words are eliminated first; the smallest
/// surviving words form the monomial basis.
class WordIndex {
public:
  WordIndex(AlphabetPtr alphabet, Ordering order, std::size_t max_degree);

  const AlphabetPtr& alphabet() const { return alphabet_; }
  const Ordering& ordering() const { return order_; }
  std::size_t max_degree() const { return max_degree_; }
  std::size_t size() const { return words_.size(); }
  const Word& word(std::size_t i) const { return words_.at(i); }
  /// Index range [first, last) of the words of a degree.
  std::pair<std::size_t, std::size_t> degree_range(std::size_t degree) const;
  std::size_t index_of(const Word& w) const;

  /// Coefficient vector; terms above max_degree are dropped.
  SparseVector encode(const NCPoly& p) const;
  NCPoly decode(const SparseVector& v, Field f) const;

private:
  AlphabetPtr alphabet_;
  Ordering order_;
  std::size_t max_degree_;
  std::vector<Word> words_;
  std::vector<std::size_t> degree_start_;
  std::map<Word, std::size_t> index_;
};

/// The span of w1 * g * w2 truncated at the index's degree, over all words
/// w1, w2 (idempotents included) and generators g. With
/// `unit_multipliers == false` the pair with deg w1 + deg w2 == 0 is
/// skipped, which yields m*G + G*m instead of the ideal (G).
EchelonBasis generate_ideal(const WordIndex& index, std::span<const NCPoly> generators,
                            Field field, bool unit_multipliers = true);

/// Which words of a degree were kept as basis words, in ascending order.
struct BasisChoice {
  std::size_t degree = 0;
  std::vector<Word> selected;
  std::vector<Word> eliminated;
};

/// The truncated quotient k<X>/(F + m^{N+1}) with its monomial basis,
/// rewrite rules and relation polynomials.
class FormalTruncation {
public:
  FormalTruncation(std::shared_ptr<const WordIndex> index, Field field, EchelonBasis ideal,
                   std::vector<NCPoly> relations);

  std::size_t degree() const { return index_->max_degree(); }
  Field field() const { return field_; }
  const AlphabetPtr& alphabet() const { return index_->alphabet(); }
  const Ordering& ordering() const { return index_->ordering(); }
  const WordIndex& index() const { return *index_; }
  std::shared_ptr<const WordIndex> index_ptr() const { return index_; }
  const EchelonBasis& ideal() const { return ideal_; }
  /// Reduced relation polynomials generating the ideal.
  const std::vector<NCPoly>& relations() const { return relations_; }

  bool is_basis_word(const Word& w) const;
  /// Basis words in ascending order.
  std::vector<Word> basis() const;
  std::size_t dimension() const { return index_->size() - ideal_.rank(); }
  /// Number of basis words of degree <= d.
  std::size_t dimension_up_to(std::size_t d) const;
  /// dimension_up_to(0), ..., dimension_up_to(degree()).
  std::vector<std::size_t> dimension_sequence() const;

  /// Normal form after truncation at degree().
  NCPoly normal_form(const NCPoly& p) const;
  SparseVector reduce(const SparseVector& v) const { return ideal_.reduce(v); }
  /// Non-basis word -> its normal form (identity on basis words is implied).
  std::map<Word, NCPoly> rewrite_table() const;
  std::vector<BasisChoice> choice_log() const;

private:
  std::shared_ptr<const WordIndex> index_;
  Field field_;
  EchelonBasis ideal_;
  std::vector<NCPoly> relations_;
};

/// Echelon basis of span(polys) as polynomials, in elimination order.
std::vector<NCPoly> reduce_family(const WordIndex& index, std::span<const NCPoly> polys,
                                  Field field, const EchelonBasis* modulo = nullptr);

/// Monomial basis and rewrite table of k<S>/(F + m^{N+1}).
FormalTruncation quotient_basis(const Presentation& p, std::size_t N,
                                const Ordering& order);
FormalTruncation quotient_basis(const Presentation& p, std::size_t N);

/// True iff the generators' images form a basis of m/m^2 of the quotient.
bool check_minimal_generators(const Presentation& p);

/// Peirce components e_i * g * e_j (as (i, j) with 0-based vertices) of the
/// generators, truncated at degree N; zero components are omitted.
std::map<std::pair<std::uint32_t, std::uint32_t>, std::vector<NCPoly>> peirce_decompose(
    std::span<const NCPoly> generators, std::size_t N);

}  // namespace gmmp

#endif
