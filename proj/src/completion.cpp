#include "gmmp/completion.hpp"

#include <algorithm>

#include "gmmp/error.hpp"

namespace gmmp {

namespace {

using Element = std::map<Word, Matrix>;

std::vector<std::size_t> offsets_of(const std::vector<ModuleRep>& modules) {
  std::vector<std::size_t> out{0};
  for (const auto& M : modules) out.push_back(out.back() + M.dim);
  return out;
}

void add_scaled(Matrix& target, const Matrix& m, const Scalar& c) {
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (const auto& [col, x] : m.row(r)) target.set(r, col, target.get(r, col) + c * x);
}

void accumulate(Element& e, const Word& w, const Matrix& m, const Scalar& c) {
  auto it = e.find(w);
  if (it == e.end()) it = e.emplace(w, Matrix(m.field(), m.rows(), m.cols())).first;
  add_scaled(it->second, m, c);
}

/// X * Y in S (x) E, dropping words above `top`.
Element multiply(const FormalTruncation& S, const Element& X, const Element& Y, std::size_t top) {
  const Alphabet& alpha = *S.alphabet();
  const Field f = S.field();
  Element out;
  for (const auto& [u, A] : X)
    for (const auto& [v, B] : Y) {
      if (u.degree() + v.degree() > top) continue;
      auto w = alpha.concat(u, v);
      if (!w) continue;
      Matrix m = A * B;
      if (m.is_zero()) continue;
      NCPoly nf = S.normal_form(NCPoly::monomial(S.alphabet(), f, *w, Scalar::one(f)));
      for (const auto& [z, c] : nf.terms())
        if (z.degree() <= top) accumulate(out, z, m, c);
    }
  return out;
}

Element known_action(const FormalTruncation& S, const std::vector<ModuleRep>& modules,
                     const std::vector<std::size_t>& offsets, const ModuleDeformation& partial,
                     std::size_t a) {
  const Alphabet& alpha = *S.alphabet();
  Matrix rho = total_action(modules, a);
  Element out;
  for (std::uint32_t v = 0; v < alpha.unit_count(); ++v) {
    Matrix block(rho.field(), rho.rows(), rho.cols());
    for (std::size_t r = offsets[v]; r < offsets[v + 1]; ++r)
      for (const auto& [c, x] : rho.row(r))
        if (c >= offsets[v] && c < offsets[v + 1]) block.set(r, c, x);
    out.emplace(alpha.unit(v), std::move(block));
  }
  for (const auto& [u, values] : partial) out.emplace(u, values.at(a));
  return out;
}

}  // namespace

Matrix total_action(const std::vector<ModuleRep>& modules, std::size_t a) {
  auto offsets = offsets_of(modules);
  Field f = modules.front().action.at(a).field();
  Matrix out(f, offsets.back(), offsets.back());
  for (std::size_t i = 0; i < modules.size(); ++i) {
    const Matrix& R = modules[i].action.at(a);
    for (std::size_t r = 0; r < R.rows(); ++r)
      for (const auto& [c, x] : R.row(r)) out.set(offsets[i] + r, offsets[i] + c, x);
  }
  return out;
}

std::optional<Lifting> lift_module_structure(const FiniteAlgebra& A,
                                             const std::vector<ModuleRep>& modules,
                                             const FormalTruncation& S,
                                             const ModuleDeformation& partial, std::size_t level) {
  const Field f = A.field();
  const Alphabet& alpha = *S.alphabet();
  const std::size_t top = level + 1;
  if (S.degree() < top) throw PreconditionError("the test algebra is truncated below the lifting order");
  if (modules.size() != alpha.unit_count())
    throw PreconditionError("one module per vertex of the test algebra expected");
  for (const auto& [u, values] : partial)
    if (u.degree() == 0 || u.degree() > level || values.size() != A.dim())
      throw PreconditionError("partial deformation outside degrees 1.." + std::to_string(level));
  auto offsets = offsets_of(modules);

  std::vector<Word> fresh;
  std::vector<std::size_t> base{0};
  for (const auto& w : S.basis())
    if (w.degree() == top) {
      fresh.push_back(w);
      base.push_back(base.back() + A.dim() * modules[alpha.source(w)].dim * modules[alpha.target(w)].dim);
    }
  const std::size_t nvars = base.back();
  auto var = [&](std::size_t n, std::size_t k, std::size_t p, std::size_t q) {
    const Word& u = fresh[n];
    std::size_t ds = modules[alpha.source(u)].dim, dt = modules[alpha.target(u)].dim;
    return base[n] + k * ds * dt + p * dt + q;
  };

  std::vector<Matrix> rho;
  std::vector<Element> known;
  for (std::size_t a = 0; a < A.dim(); ++a) {
    rho.push_back(total_action(modules, a));
    known.push_back(known_action(S, modules, offsets, partial, a));
  }

  std::vector<SparseVector> rows;
  SparseVector rhs(f);
  for (std::size_t i = 0; i < A.dim(); ++i)
    for (std::size_t j = 0; j < A.dim(); ++j) {
      Element K;
      for (const auto& [k, c] : A.product(i, j))
        for (const auto& [w, m] : known[k]) accumulate(K, w, m, c);
      for (const auto& [w, m] : multiply(S, known[i], known[j], top)) accumulate(K, w, m, -Scalar::one(f));
      for (const auto& [w, m] : K)
        if (w.degree() < top && !m.is_zero()) return std::nullopt;
      for (std::size_t n = 0; n < fresh.size(); ++n) {
        const Word& u = fresh[n];
        const std::uint32_t s = alpha.source(u), t = alpha.target(u);
        const std::size_t ds = modules[s].dim, dt = modules[t].dim;
        auto Ku = K.find(u);
        for (std::size_t p = 0; p < ds; ++p)
          for (std::size_t q = 0; q < dt; ++q) {
            SparseVector row(f);
            for (const auto& [k, c] : A.product(i, j)) row.add(var(n, k, p, q), c);
            for (std::size_t x = 0; x < ds; ++x) {
              Scalar l = rho[i].get(offsets[s] + p, offsets[s] + x);
              if (!l.is_zero()) row.add(var(n, j, x, q), -l);
            }
            for (std::size_t x = 0; x < dt; ++x) {
              Scalar r = rho[j].get(offsets[t] + x, offsets[t] + q);
              if (!r.is_zero()) row.add(var(n, i, p, x), -r);
            }
            if (Ku != K.end()) {
              Scalar c = Ku->second.get(offsets[s] + p, offsets[t] + q);
              if (!c.is_zero()) rhs.set(rows.size(), -c);
            }
            rows.push_back(std::move(row));
          }
      }
    }
  for (std::size_t n = 0; n < fresh.size(); ++n) {
    const Word& u = fresh[n];
    for (std::size_t p = 0; p < modules[alpha.source(u)].dim; ++p)
      for (std::size_t q = 0; q < modules[alpha.target(u)].dim; ++q) {
        SparseVector row(f);
        for (const auto& [k, c] : A.unit()) row.add(var(n, k, p, q), c);
        rows.push_back(std::move(row));
      }
  }

  Matrix system = Matrix::from_rows(f, nvars, rows);
  auto solution = solve_linear(system, rhs);
  if (!solution) return std::nullopt;

  auto unpack = [&](const SparseVector& x) {
    ModuleDeformation out;
    for (std::size_t n = 0; n < fresh.size(); ++n) {
      const Word& u = fresh[n];
      const std::uint32_t s = alpha.source(u), t = alpha.target(u);
      std::vector<Matrix> values(A.dim(), Matrix(f, offsets.back(), offsets.back()));
      for (std::size_t k = 0; k < A.dim(); ++k)
        for (std::size_t p = 0; p < modules[s].dim; ++p)
          for (std::size_t q = 0; q < modules[t].dim; ++q)
            values[k].set(offsets[s] + p, offsets[t] + q, x.get(var(n, k, p, q)));
      out.emplace(u, std::move(values));
    }
    return out;
  };
  Lifting out;
  out.particular = partial;
  for (auto& [u, values] : unpack(*solution)) out.particular.emplace(u, std::move(values));
  for (const auto& z : nullspace(system)) out.directions.push_back(unpack(z));
  return out;
}

std::size_t first_order_deformations(const FiniteAlgebra& A, const std::vector<ModuleRep>& modules,
                                     std::uint32_t i, std::uint32_t j) {
  const Field f = A.field();
  const auto r = static_cast<std::uint32_t>(modules.size());
  if (i >= r || j >= r) throw PreconditionError("block outside the module family");
  auto alpha = std::make_shared<const Alphabet>(r, std::vector<Letter>{{"e", std::make_pair(i, j)}});
  Presentation dual{alpha, f, {}, 1};
  FormalTruncation S = quotient_basis(dual, 1);
  auto lift = lift_module_structure(A, modules, S, {}, 0);
  if (!lift) throw Error("first-order equations are homogeneous and cannot be obstructed");

  auto offsets = offsets_of(modules);
  const std::size_t di = modules[i].dim, dj = modules[j].dim;
  EchelonBasis trivial(f);
  for (std::size_t p = 0; p < di; ++p)
    for (std::size_t q = 0; q < dj; ++q) {
      SparseVector v(f);
      for (std::size_t k = 0; k < A.dim(); ++k) {
        Matrix rho = total_action(modules, k);
        Matrix phi(f, offsets.back(), offsets.back());
        phi.set(offsets[i] + p, offsets[j] + q, Scalar::one(f));
        Matrix inner = rho * phi;
        add_scaled(inner, phi * rho, -Scalar::one(f));
        for (std::size_t x = 0; x < di; ++x)
          for (std::size_t y = 0; y < dj; ++y)
            v.set(k * di * dj + x * dj + y, inner.get(offsets[i] + x, offsets[j] + y));
      }
      trivial.insert(std::move(v));
    }
  return lift->directions.size() - trivial.rank();
}

std::vector<ModuleRep> vertex_simples(const FiniteAlgebra& A, const FormalTruncation& t) {
  const Alphabet& alpha = *t.alphabet();
  std::vector<Word> basis = t.basis();
  if (basis.size() != A.dim()) throw DimensionMismatch("algebra and truncation disagree");
  std::vector<ModuleRep> out;
  for (std::uint32_t v = 0; v < alpha.unit_count(); ++v) {
    std::vector<Scalar> character;
    for (const auto& w : basis)
      character.push_back(w == alpha.unit(v) ? Scalar::one(A.field()) : Scalar::zero(A.field()));
    std::string name = alpha.graded() ? "S" + std::to_string(v + 1) : "k";
    out.push_back(augmentation_module(A, character, std::move(name)));
  }
  return out;
}

CompletionResult complete(const FiniteAlgebra& A, const std::vector<ModuleRep>& modules,
                          std::size_t bound, const HullOptions& options) {
  if (bound < 2) throw PreconditionError("completion bound must be at least 2");
  const Field f = A.field();
  CochainComplex C = hochschild_complex(A, modules, 2);
  CompletionResult out;
  out.classes = ext_basis(C);
  out.gmmp = cochain_gmmp(C, out.classes, default_letters(out.classes, C.vertices()));
  out.hull = compute_hull(out.gmmp.algebra, bound, options);
  const FormalTruncation& H = out.hull.last();
  const Alphabet& alpha = *H.alphabet();
  std::vector<Word> words = H.basis();

  auto block_of = [&](const Word& w) {
    return alpha.graded() ? std::make_pair(alpha.source(w), alpha.target(w))
                          : std::make_pair(std::uint32_t{0}, std::uint32_t{0});
  };
  for (const auto& u : words) {
    if (u.empty()) continue;
    SparseVector cochain = out.gmmp.to_cochains.apply(out.hull.defects.at(u));
    auto [s, t] = block_of(u);
    for (const auto& [idx, x] : cochain) {
      CochainCoord c = C.coordinate(1, idx);
      if (c.source != s || c.target != t)
        throw Error("defect of " + alpha.render(u) + " leaves its block");
    }
    std::vector<Matrix> values;
    for (std::size_t a = 0; a < A.dim(); ++a) values.push_back(C.evaluate1(cochain, a));
    out.deformation.emplace(u, std::move(values));
  }

  // Endomorphism algebra E (x)_{k^r} H on (matrix unit, word) pairs.
  std::map<std::pair<std::size_t, Word>, std::size_t> pos;
  std::vector<std::string> names;
  for (std::size_t e = 0; e < C.dim(0); ++e) {
    CochainCoord c = C.coordinate(0, e);
    for (const auto& w : words) {
      if (block_of(w) != std::make_pair(c.source, c.target)) continue;
      pos.emplace(std::make_pair(e, w), out.endomorphism_basis.size());
      out.endomorphism_basis.emplace_back(c, w);
      names.push_back(C.coordinate_name(0, e) + "@" + alpha.render(w));
    }
  }
  FiniteAlgebra::Table table;
  const auto& eb = out.endomorphism_basis;
  for (std::size_t x = 0; x < eb.size(); ++x)
    for (std::size_t y = 0; y < eb.size(); ++y) {
      const auto& [c1, u1] = eb[x];
      const auto& [c2, u2] = eb[y];
      if (c1.target != c2.source || c1.col != c2.row) continue;
      auto w = alpha.concat(u1, u2);
      if (!w || w->degree() > H.degree()) continue;
      CochainCoord c{c1.source, c2.target, {}, c1.row, c2.col};
      std::size_t e = C.index(0, c);
      SparseVector v(f);
      NCPoly nf = H.normal_form(NCPoly::monomial(H.alphabet(), f, *w, Scalar::one(f)));
      for (const auto& [z, k] : nf.terms()) v.add(pos.at({e, z}), k);
      if (!v.empty()) table.emplace(std::make_pair(x, y), std::move(v));
    }
  SparseVector unit(f);
  for (std::uint32_t v = 0; v < C.vertices(); ++v)
    for (std::size_t p = 0; p < modules[v].dim; ++p) {
      Word e = alpha.graded() ? alpha.unit(v) : alpha.unit(0);
      unit.set(pos.at({C.index(0, {v, v, {}, p, p}), e}), Scalar::one(f));
    }
  out.endomorphisms = FiniteAlgebra(f, std::move(names), std::move(table), std::move(unit));

  // iota(a) = sum_u rho_u(a) (x) u, units included.
  const std::size_t D = C.total_dim();
  for (std::size_t a = 0; a < A.dim(); ++a) {
    SparseVector iota(f);
    auto put = [&](const Matrix& m, const Word& u) {
      auto [s, t] = block_of(u);
      for (std::size_t p = 0; p < modules[s].dim; ++p)
        for (std::size_t q = 0; q < modules[t].dim; ++q) {
          Scalar x = m.get(C.module_offset(s) + p, C.module_offset(t) + q);
          if (!x.is_zero()) iota.add(pos.at({C.index(0, {s, t, {}, p, q}), u}), x);
        }
    };
    Matrix rho = total_action(modules, a);
    if (alpha.graded()) {
      for (std::uint32_t v = 0; v < C.vertices(); ++v) put(rho, alpha.unit(v));
    } else {
      put(rho, alpha.unit(0));
    }
    for (const auto& [u, values] : out.deformation) put(values[a], u);
    out.iota.push_back(std::move(iota));
  }

  const FiniteAlgebra& E = out.endomorphisms;
  auto iota_of = [&](const SparseVector& a) {
    SparseVector v(f);
    for (const auto& [k, c] : a) v.axpy(c, out.iota[k]);
    return v;
  };
  if (!(iota_of(A.unit()) == E.unit())) throw Error("iota does not preserve the unit");
  for (std::size_t i = 0; i < A.dim(); ++i) {
    if (!(delta(out, out.iota[i], D) == total_action(modules, i)))
      throw Error("delta o iota differs from rho at " + A.names()[i]);
    for (std::size_t j = 0; j < A.dim(); ++j)
      if (!(E.multiply(out.iota[i], out.iota[j]) == iota_of(A.product(i, j))))
        throw Error("iota is not multiplicative at (" + A.names()[i] + ", " + A.names()[j] + ")");
  }
  return out;
}

Matrix delta(const CompletionResult& r, const SparseVector& element, std::size_t total_dim) {
  const Field f = element.field();
  Matrix out(f, total_dim, total_dim);
  std::vector<std::size_t> offsets{0};
  // Offsets follow from the matrix units of the diagonal blocks.
  std::map<std::uint32_t, std::size_t> dims;
  for (const auto& [c, w] : r.endomorphism_basis)
    if (c.source == c.target) dims[c.source] = std::max(dims[c.source], c.row + 1);
  for (const auto& [v, d] : dims) offsets.push_back(offsets.back() + d);
  for (const auto& [k, x] : element) {
    const auto& [c, w] = r.endomorphism_basis.at(k);
    if (!w.empty()) continue;
    std::size_t row = offsets.at(c.source) + c.row, col = offsets.at(c.target) + c.col;
    out.set(row, col, out.get(row, col) + x);
  }
  return out;
}

bool tangent_check(const CompletionResult& result, const CochainComplex& C) {
  const Alphabet& alpha = *result.hull.alphabet;
  for (std::uint32_t i = 0; i < C.vertices(); ++i)
    for (std::uint32_t j = 0; j < C.vertices(); ++j) {
      std::size_t classes = 0, letters = 0;
      for (const auto& c : result.classes)
        if (c.source == i && c.target == j) ++classes;
      for (std::uint32_t l = 0; l < alpha.size(); ++l)
        if (!alpha.graded() || (alpha.source(l) == i && alpha.target(l) == j)) ++letters;
      std::size_t ext = C.cohomology_dim(1, i, j);
      if (classes != ext || letters != ext) return false;
      if (first_order_deformations(C.algebra(), C.modules(), i, j) != ext) return false;
    }
  return true;
}

CochainGmmp algebra_to_gmmp(const Presentation& p, std::size_t bound) {
  if (bound < 1) throw PreconditionError("bound must be at least 1");
  if (!check_minimal_generators(p)) throw PreconditionError("the presentation is not minimal");
  FormalTruncation t = quotient_basis(p, bound);
  FiniteAlgebra A = algebra_of_truncation(t);
  std::vector<ModuleRep> modules = vertex_simples(A, t);
  CochainComplex C = hochschild_complex(A, modules, 2);
  const Alphabet& alpha = *p.alphabet;
  std::vector<Word> basis = t.basis();
  std::vector<ExtClass> classes;
  std::vector<std::string> letters;
  std::map<std::pair<std::uint32_t, std::uint32_t>, std::size_t> numbers;
  for (std::uint32_t l = 0; l < alpha.size(); ++l) {
    Word w = *alpha.word({l});
    std::size_t k = static_cast<std::size_t>(std::find(basis.begin(), basis.end(), w) - basis.begin());
    std::uint32_t s = alpha.graded() ? alpha.source(l) : 0;
    std::uint32_t e = alpha.graded() ? alpha.target(l) : 0;
    SparseVector cocycle(p.field);
    cocycle.set(C.index(1, {s, e, {k}, 0, 0}), Scalar::one(p.field));
    classes.push_back({s, e, ++numbers[{s, e}], std::move(cocycle)});
    letters.push_back(alpha.letter(l).name);
  }
  return cochain_gmmp(C, classes, letters);
}

HullResult presentation_of_formal_algebra(const Presentation& p, std::size_t bound,
                                          const HullOptions& options) {
  return compute_hull(algebra_to_gmmp(p, bound).algebra, bound, options);
}

}  // namespace gmmp
