#include "gmmp/word.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <sstream>

#include "gmmp/error.hpp"

namespace gmmp {

Alphabet::Alphabet(std::vector<std::string> names) {
  for (auto& n : names) extend(Letter{std::move(n), std::nullopt});
}

Alphabet::Alphabet(std::uint32_t r, std::vector<Letter> letters) : r_(r) {
  if (r == 0) throw PreconditionError("matrix-graded alphabet needs r >= 1");
  for (auto& l : letters) extend(std::move(l));
}

std::optional<std::uint32_t> Alphabet::find(const std::string& name) const {
  for (std::uint32_t i = 0; i < letters_.size(); ++i)
    if (letters_[i].name == name) return i;
  return std::nullopt;
}

void Alphabet::extend(Letter l) {
  if (find(l.name)) throw PreconditionError("duplicate letter " + l.name);
  if (graded() != l.vertices.has_value())
    throw PreconditionError("letter " + l.name +
                            (graded() ? " lacks vertices in a graded alphabet"
                                      : " carries vertices in an ungraded alphabet"));
  if (l.vertices && (l.vertices->first >= r_ || l.vertices->second >= r_))
    throw PreconditionError("letter " + l.name + " has a vertex outside 1.." + std::to_string(r_));
  letters_.push_back(std::move(l));
}

bool Alphabet::is_prefix_of(const Alphabet& other) const {
  return r_ == other.r_ && letters_.size() <= other.letters_.size() &&
         std::equal(letters_.begin(), letters_.end(), other.letters_.begin());
}

std::uint32_t Alphabet::source(std::uint32_t letter) const {
  const auto& l = letters_.at(letter);
  return l.vertices ? l.vertices->first : 0;
}

std::uint32_t Alphabet::target(std::uint32_t letter) const {
  const auto& l = letters_.at(letter);
  return l.vertices ? l.vertices->second : 0;
}

std::uint32_t Alphabet::target(const Word& w) const {
  return w.empty() ? w.base : target(w.letters.back());
}

Word Alphabet::unit(std::uint32_t vertex) const {
  if (vertex >= unit_count()) throw PreconditionError("idempotent index out of range");
  return Word{{}, vertex};
}

std::optional<Word> Alphabet::word(const std::vector<std::uint32_t>& letters) const {
  for (auto l : letters)
    if (l >= letters_.size()) throw PreconditionError("letter index out of range");
  for (std::size_t i = 1; i < letters.size(); ++i)
    if (target(letters[i - 1]) != source(letters[i])) return std::nullopt;
  Word w{letters, 0};
  if (!letters.empty()) w.base = source(letters.front());
  return w;
}

std::optional<Word> Alphabet::concat(const Word& a, const Word& b) const {
  if (target(a) != source(b)) return std::nullopt;
  Word w = a;
  w.letters.insert(w.letters.end(), b.letters.begin(), b.letters.end());
  return w;
}

std::vector<Word> Alphabet::words_of_degree(std::size_t degree) const {
  std::vector<Word> out;
  if (degree == 0) {
    for (std::uint32_t v = 0; v < unit_count(); ++v) out.push_back(unit(v));
    return out;
  }
  std::vector<Word> prev = words_of_degree(degree - 1);
  for (const auto& w : prev) {
    for (std::uint32_t l = 0; l < letters_.size(); ++l) {
      if (!w.empty() && target(w) != source(l)) continue;
      if (w.empty() && source(l) != w.base) continue;
      Word n = w;
      n.letters.push_back(l);
      out.push_back(std::move(n));
    }
  }
  return out;
}

std::string Alphabet::render(const Word& w) const {
  if (w.empty()) return graded() ? "e(" + std::to_string(w.base + 1) + ")" : "1";
  std::string s;
  for (std::size_t i = 0; i < w.letters.size(); ++i) {
    if (i) s += '*';
    s += letters_.at(w.letters[i]).name;
  }
  return s;
}

Ordering Ordering::deglex(std::size_t n) {
  Ordering o;
  o.rank.resize(n);
  std::iota(o.rank.begin(), o.rank.end(), 0u);
  return o;
}

Ordering Ordering::deglex(const Alphabet& a, const std::vector<std::string>& order) {
  Ordering o;
  o.rank.assign(a.size(), 0);
  std::vector<bool> placed(a.size(), false);
  std::uint32_t next = 0;
  for (const auto& name : order) {
    auto idx = a.find(name);
    if (!idx) throw PreconditionError("ordering names unknown letter " + name);
    if (placed[*idx]) throw PreconditionError("ordering lists letter " + name + " twice");
    placed[*idx] = true;
    o.rank[*idx] = next++;
  }
  for (std::uint32_t i = 0; i < a.size(); ++i)
    if (!placed[i]) o.rank[i] = next++;
  return o;
}

bool Ordering::less(const Word& a, const Word& b) const {
  if (a.degree() != b.degree()) return a.degree() < b.degree();
  auto within = [&](const Word& x, const Word& y) {
    if (x.base != y.base) return x.base < y.base;
    for (std::size_t i = 0; i < x.letters.size(); ++i) {
      auto rx = x.letters[i] < rank.size() ? rank[x.letters[i]] : x.letters[i];
      auto ry = y.letters[i] < rank.size() ? rank[y.letters[i]] : y.letters[i];
      if (rx != ry) return rx < ry;
    }
    return false;
  };
  return reversed ? within(b, a) : within(a, b);
}

std::string Ordering::describe(const Alphabet& a) const {
  std::vector<std::uint32_t> letters(a.size());
  std::iota(letters.begin(), letters.end(), 0u);
  std::sort(letters.begin(), letters.end(), [&](auto x, auto y) { return rank[x] < rank[y]; });
  std::string s = "deglex:";
  for (std::size_t i = 0; i < letters.size(); ++i) s += (i ? "," : "") + a.letter(letters[i]).name;
  if (reversed) s += ":reversed";
  return s;
}

NCPoly::NCPoly(AlphabetPtr alphabet, Field field) : alphabet_(std::move(alphabet)), field_(field) {}

NCPoly NCPoly::monomial(AlphabetPtr a, Field f, const Word& w, const Scalar& c) {
  NCPoly p(std::move(a), f);
  p.add_term(w, c);
  return p;
}

NCPoly NCPoly::letter(AlphabetPtr a, Field f, std::uint32_t l) {
  Word w = *a->word({l});
  return monomial(std::move(a), f, w, Scalar::one(f));
}

NCPoly NCPoly::one(AlphabetPtr a, Field f) {
  NCPoly p(a, f);
  for (std::uint32_t v = 0; v < a->unit_count(); ++v) p.add_term(a->unit(v), Scalar::one(f));
  return p;
}

NCPoly NCPoly::idempotent(AlphabetPtr a, Field f, std::uint32_t vertex) {
  Word w = a->unit(vertex);
  return monomial(std::move(a), f, w, Scalar::one(f));
}

Scalar NCPoly::coefficient(const Word& w) const {
  auto it = terms_.find(w);
  return it == terms_.end() ? Scalar::zero(field_) : it->second;
}

std::size_t NCPoly::degree() const {
  std::size_t d = 0;
  for (const auto& [w, c] : terms_) d = std::max(d, w.degree());
  return d;
}

std::size_t NCPoly::low_degree() const {
  std::size_t d = SIZE_MAX;
  for (const auto& [w, c] : terms_) d = std::min(d, w.degree());
  return d;
}

void NCPoly::add_term(const Word& w, const Scalar& c) {
  if (!(c.field() == field_)) throw FieldMismatch();
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(w, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

NCPoly NCPoly::truncated(std::size_t bound) const {
  NCPoly out(alphabet_, field_);
  for (const auto& [w, c] : terms_)
    if (w.degree() <= bound) out.terms_.emplace(w, c);
  return out;
}

NCPoly NCPoly::homogeneous_part(std::size_t degree) const {
  NCPoly out(alphabet_, field_);
  for (const auto& [w, c] : terms_)
    if (w.degree() == degree) out.terms_.emplace(w, c);
  return out;
}

void NCPoly::check_compatible(const NCPoly& o) {
  if (!(field_ == o.field_)) throw FieldMismatch();
  if (alphabet_ == o.alphabet_) return;
  if (!alphabet_ || !o.alphabet_) {
    if (!alphabet_) alphabet_ = o.alphabet_;
    return;
  }
  if (o.alphabet_->is_prefix_of(*alphabet_)) return;
  if (alphabet_->is_prefix_of(*o.alphabet_)) {
    alphabet_ = o.alphabet_;
    return;
  }
  throw AlphabetMismatch();
}

NCPoly& NCPoly::operator+=(const NCPoly& o) {
  check_compatible(o);
  for (const auto& [w, c] : o.terms_) add_term(w, c);
  return *this;
}

NCPoly& NCPoly::operator-=(const NCPoly& o) {
  check_compatible(o);
  for (const auto& [w, c] : o.terms_) add_term(w, -c);
  return *this;
}

NCPoly NCPoly::operator-() const {
  NCPoly out = *this;
  for (auto& [w, c] : out.terms_) c = -c;
  return out;
}

NCPoly operator*(const Scalar& s, NCPoly p) {
  if (s.is_zero()) {
    p.terms_.clear();
    return p;
  }
  for (auto& [w, c] : p.terms_) c *= s;
  return p;
}

bool operator==(const NCPoly& a, const NCPoly& b) {
  return a.field_ == b.field_ && a.terms_ == b.terms_;
}

std::string NCPoly::render(const Ordering& order) const {
  if (terms_.empty()) return "0";
  std::vector<std::pair<Word, Scalar>> sorted(terms_.begin(), terms_.end());
  std::sort(sorted.begin(), sorted.end(),
            [&](const auto& x, const auto& y) { return order.less(x.first, y.first); });
  std::ostringstream os;
  bool first = true;
  for (const auto& [w, c] : sorted) {
    Scalar mag = c;
    bool neg = c.is_negative();
    if (neg) mag = -c;
    if (first)
      os << (neg ? "-" : "");
    else
      os << (neg ? " - " : " + ");
    first = false;
    if (w.empty()) {
      if (alphabet_->graded())
        os << (mag.is_one() ? "" : mag.str() + "*") << alphabet_->render(w);
      else
        os << mag.str();
    } else {
      if (!mag.is_one()) os << mag.str() << "*";
      os << alphabet_->render(w);
    }
  }
  return os.str();
}

NCPoly multiply(const NCPoly& a, const NCPoly& b, std::optional<std::size_t> bound) {
  NCPoly out(a.alphabet(), a.field());
  out += NCPoly(b.alphabet(), b.field());  // alphabet and field compatibility
  const Alphabet& alpha = *out.alphabet();
  for (const auto& [wa, ca] : a.terms()) {
    for (const auto& [wb, cb] : b.terms()) {
      if (bound && wa.degree() + wb.degree() > *bound) continue;
      auto w = alpha.concat(wa, wb);
      if (!w) continue;
      out.add_term(*w, ca * cb);
    }
  }
  return out;
}

std::vector<Scalar> augment(const NCPoly& a) {
  const std::uint32_t n = a.alphabet() ? a.alphabet()->unit_count() : 1;
  std::vector<Scalar> out(n, Scalar::zero(a.field()));
  for (const auto& [w, c] : a.terms())
    if (w.empty()) out[w.base] += c;
  return out;
}

}  // namespace gmmp
