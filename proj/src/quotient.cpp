#include "gmmp/quotient.hpp"

#include <algorithm>

#include "gmmp/error.hpp"

namespace gmmp {

void Presentation::validate() const {
  if (!alphabet) throw PreconditionError("presentation without alphabet");
  for (std::size_t i = 0; i < relations.size(); ++i) {
    const auto& f = relations[i];
    if (!(f.field() == field)) throw FieldMismatch();
    if (f.alphabet() && f.alphabet() != alphabet && !f.alphabet()->is_prefix_of(*alphabet))
      throw AlphabetMismatch();
    for (const auto& c : augment(f))
      if (!c.is_zero())
        throw PreconditionError("relation " + std::to_string(i + 1) + " has a nonzero constant term");
  }
}

WordIndex::WordIndex(AlphabetPtr alphabet, Ordering order, std::size_t max_degree)
    : alphabet_(std::move(alphabet)), order_(std::move(order)), max_degree_(max_degree) {
  if (order_.rank.size() < alphabet_->size()) {
    // Letters added lazily after the ordering was fixed go last.
    for (std::uint32_t l = static_cast<std::uint32_t>(order_.rank.size()); l < alphabet_->size(); ++l)
      order_.rank.push_back(l);
  }
  std::vector<Word> level;
  for (std::size_t d = 0; d <= max_degree_; ++d) {
    if (d == 0) {
      level = alphabet_->words_of_degree(0);
    } else {
      std::vector<Word> next;
      for (const auto& w : level)
        for (std::uint32_t l = 0; l < alphabet_->size(); ++l)
          if (alphabet_->target(w) == alphabet_->source(l)) {
            Word n = w;
            n.letters.push_back(l);
            next.push_back(std::move(n));
          }
      level = std::move(next);
    }
    std::vector<Word> sorted = level;
    std::sort(sorted.begin(), sorted.end(),
              [&](const Word& a, const Word& b) { return order_.less(b, a); });
    degree_start_.push_back(words_.size());
    for (auto& w : sorted) {
      index_.emplace(w, words_.size());
      words_.push_back(std::move(w));
    }
  }
  degree_start_.push_back(words_.size());
}

std::pair<std::size_t, std::size_t> WordIndex::degree_range(std::size_t degree) const {
  if (degree > max_degree_) return {words_.size(), words_.size()};
  return {degree_start_[degree], degree_start_[degree + 1]};
}

std::size_t WordIndex::index_of(const Word& w) const {
  auto it = index_.find(w);
  if (it == index_.end()) throw PreconditionError("word " + alphabet_->render(w) + " not indexed");
  return it->second;
}

SparseVector WordIndex::encode(const NCPoly& p) const {
  SparseVector v(p.field());
  for (const auto& [w, c] : p.terms())
    if (w.degree() <= max_degree_) v.add(index_of(w), c);
  return v;
}

NCPoly WordIndex::decode(const SparseVector& v, Field f) const {
  NCPoly p(alphabet_, f);
  for (const auto& [i, c] : v) p.add_term(words_.at(i), c);
  return p;
}

EchelonBasis generate_ideal(const WordIndex& index, std::span<const NCPoly> generators,
                            Field field, bool unit_multipliers) {
  EchelonBasis basis(field);
  const Alphabet& alpha = *index.alphabet();
  const std::size_t N = index.max_degree();
  for (const auto& g : generators) {
    NCPoly gt = g.truncated(N);
    if (gt.is_zero()) continue;
    const std::size_t low = gt.low_degree();
    for (std::size_t d1 = 0; d1 + low <= N; ++d1) {
      auto [b1, e1] = index.degree_range(d1);
      for (std::size_t d2 = 0; d1 + d2 + low <= N; ++d2) {
        if (!unit_multipliers && d1 + d2 == 0) continue;
        auto [b2, e2] = index.degree_range(d2);
        for (std::size_t i1 = b1; i1 < e1; ++i1) {
          const Word& w1 = index.word(i1);
          for (std::size_t i2 = b2; i2 < e2; ++i2) {
            const Word& w2 = index.word(i2);
            SparseVector row(field);
            for (const auto& [w, c] : gt.terms()) {
              if (w.degree() + d1 + d2 > N) continue;
              auto left = alpha.concat(w1, w);
              if (!left) continue;
              auto full = alpha.concat(*left, w2);
              if (!full) continue;
              row.add(index.index_of(*full), c);
            }
            if (!row.empty()) basis.insert(std::move(row));
          }
        }
      }
    }
  }
  return basis;
}

FormalTruncation::FormalTruncation(std::shared_ptr<const WordIndex> index, Field field,
                                   EchelonBasis ideal, std::vector<NCPoly> relations)
    : index_(std::move(index)), field_(field), ideal_(std::move(ideal)),
      relations_(std::move(relations)) {}

bool FormalTruncation::is_basis_word(const Word& w) const {
  if (w.degree() > degree()) return false;
  return !ideal_.is_pivot(index_->index_of(w));
}

std::vector<Word> FormalTruncation::basis() const {
  std::vector<Word> out;
  for (std::size_t i = 0; i < index_->size(); ++i)
    if (!ideal_.is_pivot(i)) out.push_back(index_->word(i));
  std::stable_sort(out.begin(), out.end(),
                   [&](const Word& a, const Word& b) { return ordering().less(a, b); });
  return out;
}

std::size_t FormalTruncation::dimension_up_to(std::size_t d) const {
  auto end = index_->degree_range(std::min(d, degree())).second;
  std::size_t pivots = 0;
  for (const auto& [p, row] : ideal_.rows())
    if (p < end) ++pivots;
  return end - pivots;
}

std::vector<std::size_t> FormalTruncation::dimension_sequence() const {
  std::vector<std::size_t> out;
  for (std::size_t d = 0; d <= degree(); ++d) out.push_back(dimension_up_to(d));
  return out;
}

NCPoly FormalTruncation::normal_form(const NCPoly& p) const {
  return index_->decode(ideal_.reduce(index_->encode(p)), field_);
}

std::map<Word, NCPoly> FormalTruncation::rewrite_table() const {
  std::map<Word, NCPoly> out;
  for (const auto& [p, row] : ideal_.rows()) {
    SparseVector rest = row;
    rest.set(p, Scalar::zero(field_));
    rest.scale(-Scalar::one(field_));
    out.emplace(index_->word(p), index_->decode(rest, field_));
  }
  return out;
}

std::vector<BasisChoice> FormalTruncation::choice_log() const {
  std::vector<BasisChoice> out;
  auto asc = [&](const Word& a, const Word& b) { return ordering().less(a, b); };
  for (std::size_t d = 0; d <= degree(); ++d) {
    BasisChoice c;
    c.degree = d;
    auto [b, e] = index_->degree_range(d);
    for (std::size_t i = b; i < e; ++i)
      (ideal_.is_pivot(i) ? c.eliminated : c.selected).push_back(index_->word(i));
    std::sort(c.selected.begin(), c.selected.end(), asc);
    std::sort(c.eliminated.begin(), c.eliminated.end(), asc);
    out.push_back(std::move(c));
  }
  return out;
}

std::vector<NCPoly> reduce_family(const WordIndex& index, std::span<const NCPoly> polys,
                                  Field field, const EchelonBasis* modulo) {
  EchelonBasis basis(field);
  for (const auto& p : polys) {
    SparseVector v = index.encode(p);
    if (modulo) v = modulo->reduce(std::move(v));
    basis.insert(std::move(v));
  }
  std::vector<NCPoly> out;
  for (const auto& [pivot, row] : basis.rows()) out.push_back(index.decode(row, field));
  return out;
}

FormalTruncation quotient_basis(const Presentation& p, std::size_t N, const Ordering& order) {
  p.validate();
  auto index = std::make_shared<const WordIndex>(p.alphabet, order, N);
  EchelonBasis ideal = generate_ideal(*index, p.relations, p.field, true);
  auto [b, e] = index->degree_range(0);
  for (std::size_t i = b; i < e; ++i)
    if (ideal.is_pivot(i)) throw InconsistentSystem("presentation is inconsistent: 1 lies in F");
  auto rels = reduce_family(*index, p.relations, p.field);
  return FormalTruncation(index, p.field, std::move(ideal), std::move(rels));
}

FormalTruncation quotient_basis(const Presentation& p, std::size_t N) {
  return quotient_basis(p, N, Ordering::deglex(p.alphabet->size()));
}

bool check_minimal_generators(const Presentation& p) {
  FormalTruncation t = quotient_basis(p, 1);
  return t.dimension_up_to(1) - t.dimension_up_to(0) == p.alphabet->size();
}

std::map<std::pair<std::uint32_t, std::uint32_t>, std::vector<NCPoly>> peirce_decompose(
    std::span<const NCPoly> generators, std::size_t N) {
  std::map<std::pair<std::uint32_t, std::uint32_t>, std::vector<NCPoly>> out;
  for (const auto& g : generators) {
    if (!g.alphabet() || !g.alphabet()->graded())
      throw PreconditionError("Peirce decomposition needs a matrix-graded alphabet");
    const Alphabet& alpha = *g.alphabet();
    std::map<std::pair<std::uint32_t, std::uint32_t>, NCPoly> parts;
    for (const auto& [w, c] : g.terms()) {
      if (w.degree() > N) continue;
      auto key = std::make_pair(alpha.source(w), alpha.target(w));
      parts.try_emplace(key, NCPoly(g.alphabet(), g.field())).first->second.add_term(w, c);
    }
    for (auto& [key, part] : parts)
      if (!part.is_zero()) out[key].push_back(std::move(part));
  }
  return out;
}

}  // namespace gmmp
