#ifndef GMMP_WORD_HPP
#define GMMP_WORD_HPP

#include <compare>
#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "gmmp/scalar.hpp"

namespace gmmp {

/// A variable. In a matrix-graded alphabet every letter is an arrow
/// source -> target between vertices 0..r-1 (x_{ij}(l) with i = source+1).
struct Letter {
  std::string name;
  std::optional<std::pair<std::uint32_t, std::uint32_t>> vertices;

  friend bool operator==(const Letter&, const Letter&) = default;
};

/// A monomial. `base` is the vertex of an empty word in a matrix-graded
/// alphabet and the source vertex of a nonempty one; always 0 otherwise.
struct Word {
  std::vector<std::uint32_t> letters;
  std::uint32_t base = 0;

  std::size_t degree() const { return letters.size(); }
  bool empty() const { return letters.empty(); }

  friend auto operator<=>(const Word&, const Word&) = default;
  friend bool operator==(const Word&, const Word&) = default;
};

/// Ordered set of letters. Ungraded alphabets have `vertices() == 0`; a
/// matrix-graded alphabet over k^r has `vertices() == r`.
class Alphabet {
public:
  Alphabet() = default;
  /// Ungraded alphabet.
  explicit Alphabet(std::vector<std::string> names);
  /// Matrix-graded alphabet; every letter must carry vertices below r.
  Alphabet(std::uint32_t r, std::vector<Letter> letters);

  std::uint32_t vertices() const { return r_; }
  bool graded() const { return r_ != 0; }
  /// Number of idempotents in the unit: r if graded, else 1.
  std::uint32_t unit_count() const { return r_ ? r_ : 1; }
  std::size_t size() const { return letters_.size(); }
  const Letter& letter(std::size_t i) const { return letters_.at(i); }
  const std::vector<Letter>& letters() const { return letters_; }
  std::optional<std::uint32_t> find(const std::string& name) const;

  /// Appends a letter, keeping every existing index; used to extend a
  /// countable alphabet lazily.
  void extend(Letter l);
  /// True when `other` has the same grading and this alphabet's letters are
  /// a prefix of other's.
  bool is_prefix_of(const Alphabet& other) const;

  std::uint32_t source(std::uint32_t letter) const;
  std::uint32_t target(std::uint32_t letter) const;
  std::uint32_t source(const Word& w) const { return w.base; }
  std::uint32_t target(const Word& w) const;

  Word unit(std::uint32_t vertex = 0) const;
  /// Builds a word from letter indices; nullopt if not composable.
  std::optional<Word> word(const std::vector<std::uint32_t>& letters) const;
  /// Concatenation; nullopt when the matrix grading forbids it.
  std::optional<Word> concat(const Word& a, const Word& b) const;

  /// All words of exactly `degree` letters (composable ones only).
  std::vector<Word> words_of_degree(std::size_t degree) const;

  /// `a*b*c`, `1` for the unit, `e(i)` for a graded idempotent.
  std::string render(const Word& w) const;

  friend bool operator==(const Alphabet&, const Alphabet&) = default;

private:
  std::uint32_t r_ = 0;
  std::vector<Letter> letters_;
};

using AlphabetPtr = std::shared_ptr<const Alphabet>;

/// Admissible degree-lexicographic ordering. `rank[l]` is the position of
/// letter l in the declared letter order. `reversed` flips the order among
/// words of equal degree; it is used to exercise alternative basis choices.
struct Ordering {
  std::vector<std::uint32_t> rank;
  bool reversed = false;

  /// Identity letter order for an alphabet with n letters.
  static Ordering deglex(std::size_t n);
  /// Letter order given by names, e.g. {"y", "x"}; unnamed letters follow in
  /// alphabet order.
  static Ordering deglex(const Alphabet& a, const std::vector<std::string>& order);

  /// Strict deglex comparison (with the reversal applied inside a degree).
  bool less(const Word& a, const Word& b) const;
  std::string describe(const Alphabet& a) const;
};

/// Element of k<S> or of the matrix polynomial algebra k<N>.
class NCPoly {
public:
  using Terms = std::map<Word, Scalar>;

  NCPoly() = default;
  NCPoly(AlphabetPtr alphabet, Field field);

  static NCPoly monomial(AlphabetPtr a, Field f, const Word& w, const Scalar& c);
  static NCPoly letter(AlphabetPtr a, Field f, std::uint32_t l);
  /// The unit: 1, or the sum of all idempotents in the graded case.
  static NCPoly one(AlphabetPtr a, Field f);
  static NCPoly idempotent(AlphabetPtr a, Field f, std::uint32_t vertex);

  const AlphabetPtr& alphabet() const { return alphabet_; }
  Field field() const { return field_; }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  Scalar coefficient(const Word& w) const;
  /// Highest and lowest word length present; the polynomial must be nonzero.
  std::size_t degree() const;
  std::size_t low_degree() const;

  void add_term(const Word& w, const Scalar& c);
  NCPoly truncated(std::size_t bound) const;
  /// Terms of exactly this degree.
  NCPoly homogeneous_part(std::size_t degree) const;

  NCPoly& operator+=(const NCPoly& o);
  NCPoly& operator-=(const NCPoly& o);
  NCPoly operator-() const;
  friend NCPoly operator+(NCPoly a, const NCPoly& b) { return a += b; }
  friend NCPoly operator-(NCPoly a, const NCPoly& b) { return a -= b; }
  friend NCPoly operator*(const Scalar& s, NCPoly p);
  friend bool operator==(const NCPoly& a, const NCPoly& b);

  /// Terms listed in ascending `order`, e.g. `x*y - y*x`; `0` when empty.
  std::string render(const Ordering& order) const;

private:
  void check_compatible(const NCPoly& o);

  AlphabetPtr alphabet_;
  Field field_{};
  Terms terms_;
};

/// Concatenation product, dropping terms of degree above `bound` when given.
/// Non-composable concatenations vanish in the graded case.
NCPoly multiply(const NCPoly& a, const NCPoly& b, std::optional<std::size_t> bound = std::nullopt);

/// Constant terms: a single scalar, or the k^r vector of idempotent
/// coefficients in the graded case.
std::vector<Scalar> augment(const NCPoly& a);

}  // namespace gmmp

#endif
