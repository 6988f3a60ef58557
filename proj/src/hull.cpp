#include "gmmp/hull.hpp"

#include <algorithm>

#include "gmmp/error.hpp"

namespace gmmp {

namespace {

struct HullContext {
  EchelonBasis image_d;
  Matrix d;

  explicit HullContext(const GmmpAlgebra& L) : image_d(L.field()), d(L.d_matrix()) {
    for (std::size_t j = 0; j < L.dim_v(); ++j) image_d.insert(L.d(j));
  }
};

SparseVector unit_vector(Field f, std::size_t i) {
  SparseVector e(f);
  e.set(i, Scalar::one(f));
  return e;
}

/// Nonunit basis words together with their defects.
std::vector<std::pair<Word, const SparseVector*>> defect_words(const FormalTruncation& t,
                                                               const DefectAssignment& defects) {
  std::vector<std::pair<Word, const SparseVector*>> out;
  for (const auto& w : t.basis()) {
    if (w.empty()) continue;
    auto it = defects.find(w);
    if (it == defects.end())
      throw PreconditionError("no defect assigned to basis word " + t.alphabet()->render(w));
    out.emplace_back(w, &it->second);
  }
  return out;
}

/// Coefficients (over W) of sum_{t1,t2} v_{t1} cup v_{t2} (t1 t2) plus
/// sum_{deg u >= 2} d(v_u) u, reduced modulo `ideal` in `index`.
std::map<std::size_t, SparseVector> obstruction(const GmmpAlgebra& L, const WordIndex& index,
                                                const EchelonBasis& ideal,
                                                const std::vector<std::pair<Word, const SparseVector*>>& words) {
  const Field f = L.field();
  const Alphabet& alpha = *index.alphabet();
  const std::size_t top = index.max_degree();
  std::map<std::size_t, SparseVector> o;
  auto add = [&](const Word& w, const SparseVector& c) {
    SparseVector nf = ideal.reduce(unit_vector(f, index.index_of(w)));
    for (const auto& [s, beta] : nf) o.try_emplace(s, SparseVector(f)).first->second.axpy(beta, c);
  };
  for (const auto& [t1, v1] : words) {
    for (const auto& [t2, v2] : words) {
      if (t1.degree() + t2.degree() > top) continue;
      auto w = alpha.concat(t1, t2);
      if (!w) continue;
      SparseVector c = L.cup(*v1, *v2);
      if (!c.empty()) add(*w, c);
    }
  }
  for (const auto& [u, v] : words) {
    if (u.degree() < 2) continue;
    SparseVector c = L.d(*v);
    if (!c.empty()) add(u, c);
  }
  for (auto it = o.begin(); it != o.end();) it = it->second.empty() ? o.erase(it) : std::next(it);
  return o;
}

std::pair<FormalTruncation, DefectAssignment> step(const GmmpAlgebra& L, const HullContext& ctx,
                                                   const FormalTruncation& cur,
                                                   const DefectAssignment& defects) {
  const Field f = L.field();
  const std::size_t N = cur.degree();
  const std::size_t next_degree = N + 1;
  auto index = std::make_shared<const WordIndex>(cur.alphabet(), cur.ordering(), next_degree);
  const Alphabet& alpha = *index->alphabet();

  // H_{N+1}: only m*F + F*m is divided out, so the relations themselves survive.
  EchelonBasis lifted = generate_ideal(*index, cur.relations(), f, false);
  auto words = defect_words(cur, defects);
  auto o = obstruction(L, *index, lifted, words);

  // Project every coefficient onto W / im d; coordinate y yields one relation.
  std::map<std::size_t, NCPoly> by_class;
  for (const auto& [s, coeff] : o) {
    SparseVector projected = ctx.image_d.reduce(coeff);
    for (const auto& [y, c] : projected)
      by_class.try_emplace(y, NCPoly(index->alphabet(), f)).first->second.add_term(index->word(s), c);
  }
  std::vector<NCPoly> candidates;
  for (auto& [y, g] : by_class)
    if (!g.is_zero()) candidates.push_back(std::move(g));
  std::vector<NCPoly> relations = reduce_family(*index, candidates, f, &lifted);

  EchelonBasis ideal = lifted;
  EchelonBasis generated = generate_ideal(*index, relations, f, true);
  for (const auto& [p, row] : generated.rows()) ideal.insert(row);
  FormalTruncation next(index, f, std::move(ideal), relations);

  if (next.dimension_up_to(N) != cur.dimension())
    throw MathError("relations at degree " + std::to_string(next_degree) +
                    " do not reduce to those at degree " + std::to_string(N));

  // Defects: the residual in H_{N+1}-bar must lie in im d on each new word.
  std::map<std::size_t, SparseVector> residual;
  for (const auto& [s, coeff] : o) {
    SparseVector nf = next.ideal().reduce(unit_vector(f, s));
    for (const auto& [u, beta] : nf)
      residual.try_emplace(u, SparseVector(f)).first->second.axpy(beta, coeff);
  }
  DefectAssignment out = defects;
  for (auto it = out.begin(); it != out.end();)
    it = next.is_basis_word(it->first) ? std::next(it) : out.erase(it);
  auto [first, last] = index->degree_range(next_degree);
  for (std::size_t i = first; i < last; ++i) {
    if (next.ideal().is_pivot(i)) continue;
    const Word& u = index->word(i);
    SparseVector target(f);
    if (auto it = residual.find(i); it != residual.end()) target = -Scalar::one(f) * it->second;
    auto v = solve_linear(ctx.d, target);
    if (!v) throw DefectUnsolvable(alpha.render(u), next_degree);
    out[u] = std::move(*v);
  }
  for (const auto& [u, coeff] : residual) {
    const Word& w = index->word(u);
    if (w.degree() >= 2 && w.degree() <= N && !coeff.empty())
      throw MathError("deformation equation fails at basis word " + alpha.render(w));
  }
  return {std::move(next), std::move(out)};
}

}  // namespace

AlphabetPtr hull_alphabet(const GmmpAlgebra& L) {
  if (L.vertices() == 0) {
    std::vector<std::string> names;
    for (const auto& g : L.generators()) names.push_back(g.letter);
    return std::make_shared<const Alphabet>(std::move(names));
  }
  std::vector<Letter> letters;
  for (const auto& g : L.generators()) letters.push_back(Letter{g.letter, g.vertices});
  return std::make_shared<const Alphabet>(L.vertices(), std::move(letters));
}

std::pair<FormalTruncation, DefectAssignment> hull_init(const GmmpAlgebra& L,
                                                        const HullOptions& options) {
  if (L.generators().empty() && L.vertices() == 0)
    throw PreconditionError("the distinguished set X is empty");
  AlphabetPtr alpha = hull_alphabet(L);
  Ordering order = options.ordering ? *options.ordering : Ordering::deglex(alpha->size());
  auto index = std::make_shared<const WordIndex>(alpha, order, 1);
  FormalTruncation t(index, L.field(), EchelonBasis(L.field()), {});
  DefectAssignment defects;
  for (std::uint32_t i = 0; i < L.generators().size(); ++i)
    defects.emplace(*alpha->word({i}), unit_vector(L.field(), L.generators()[i].v_index));
  return {std::move(t), std::move(defects)};
}

std::pair<FormalTruncation, DefectAssignment> hull_step(const GmmpAlgebra& L,
                                                        const FormalTruncation& current,
                                                        const DefectAssignment& defects) {
  HullContext ctx(L);
  return step(L, ctx, current, defects);
}

HullResult compute_hull(const GmmpAlgebra& L, std::size_t bound, const HullOptions& options) {
  if (bound < 1) throw PreconditionError("hull bound must be at least 1");
  HullContext ctx(L);
  auto [t, defects] = hull_init(L, options);
  HullResult out;
  out.alphabet = t.alphabet();
  out.field = L.field();
  out.ordering = t.ordering();
  for (const auto& g : L.generators()) out.generators.push_back(g.letter);
  out.truncations.push_back(t);
  while (out.truncations.size() < bound) {
    auto [next, nd] = step(L, ctx, out.truncations.back(), defects);
    out.truncations.push_back(std::move(next));
    defects = std::move(nd);
  }
  out.defects = std::move(defects);
  out.dimension_sequence = out.last().dimension_sequence();
  for (const auto& tr : out.truncations) out.relation_counts.push_back(tr.relations().size());

  // Relations at N are the entries of truncations[N - 1].
  std::size_t n = bound;
  while (n > 1 && out.truncations[n - 2].relations() == out.truncations[n - 1].relations()) --n;
  if (bound >= n + 2) out.stabilized_at = n;
  return out;
}

std::map<Word, SparseVector> deformation_residual(const GmmpAlgebra& L,
                                                  const FormalTruncation& truncation,
                                                  const DefectAssignment& defects) {
  auto words = defect_words(truncation, defects);
  auto o = obstruction(L, truncation.index(), truncation.ideal(), words);
  std::map<Word, SparseVector> out;
  for (auto& [s, coeff] : o) {
    const Word& w = truncation.index().word(s);
    if (w.degree() >= 2) out.emplace(w, std::move(coeff));
  }
  return out;
}

bool verify_defects(const GmmpAlgebra& L, const FormalTruncation& truncation,
                    const DefectAssignment& defects) {
  return deformation_residual(L, truncation, defects).empty();
}

NCPoly canonical_relation(const NCPoly& p, const Ordering& order) {
  if (p.is_zero()) return p;
  const auto* first = &*p.terms().begin();
  for (const auto& t : p.terms())
    if (order.less(t.first, first->first)) first = &t;
  return first->second.inverse() * p;
}

}  // namespace gmmp
