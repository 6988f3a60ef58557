// Acceptance run: one PASS/FAIL line per criterion with its wall time and
// limit. Exit status 1 when any criterion fails.

#include <chrono>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "gmmp/completion.hpp"
#include "gmmp/error.hpp"
#include "gmmp/hochschild.hpp"
#include "gmmp/parse.hpp"
#include "gmmp/relation.hpp"
#include "gmmp/report.hpp"
#include "oracles.hpp"
#include "example_oracle.hpp"

using namespace gmmp;

namespace {

const Field Q = Field::rationals();

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string data(const std::string& name) { return slurp(std::string(GMMP_TEST_DATA) + "/" + name); }

/// Collects the first failure message of a criterion.
struct Check {
  std::string failure;
  void expect(bool ok, const std::string& what) {
    if (!ok && failure.empty()) failure = what;
  }
};

int failures = 0;

void criterion(int id, const char* title, double limit_ms, const std::function<void(Check&)>& body) {
  Check c;
  auto t0 = std::chrono::steady_clock::now();
  try {
    body(c);
  } catch (const std::exception& e) {
    c.expect(false, std::string("exception: ") + e.what());
  }
  double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  if (c.failure.empty() && ms > limit_ms) c.failure = "time limit exceeded";
  bool ok = c.failure.empty();
  if (!ok) ++failures;
  std::printf("criterion %2d %s  %-44s %9.1f ms (limit %.0f ms)%s%s\n", id, ok ? "PASS" : "FAIL", title, ms,
              limit_ms, ok ? "" : "  ", c.failure.c_str());
  std::fflush(stdout);
}

// --- 1 ---

oracle::Dense nullspace(const Matrix& R, std::size_t n) {
  oracle::Dense d = oracle::to_dense(R);
  std::vector<std::size_t> piv = d.a.empty() ? std::vector<std::size_t>{} : oracle::eliminate(d);
  std::vector<bool> is_piv(n, false);
  for (auto p : piv) is_piv[p] = true;
  oracle::Dense out;
  out.p = R.field().characteristic;
  for (std::size_t f = 0; f < n; ++f) {
    if (is_piv[f]) continue;
    std::vector<mpq_class> v(n, 0);
    v[f] = 1;
    for (std::size_t r = 0; r < piv.size(); ++r) v[piv[r]] = out.norm(-d.a[r][f]);
    out.a.push_back(v);
  }
  return out;
}

Matrix from_oracle(const oracle::Dense& d, Field f, std::size_t cols) {
  Matrix m(f, d.rows(), cols);
  for (std::size_t i = 0; i < d.rows(); ++i)
    for (std::size_t j = 0; j < cols; ++j)
      if (d.a[i][j] != 0) m.set(i, j, Scalar(f, d.a[i][j]));
  return m;
}

void exactness(Check& c) {
  std::mt19937 rng(2024);
  for (int t = 0; t < 200; ++t) {
    Field f = t % 2 ? Field::prime(5) : Q;
    std::size_t n = 1 + rng() % 12, rows = rng() % (n + 3);
    Matrix R(f, rows, n);
    for (std::size_t i = 0; i < rows; ++i) {
      if (i > 0 && rng() % 4 == 0) {
        // a combination of earlier rows
        for (std::size_t j = 0; j < n; ++j) R.set(i, j, R.get(i - 1, j) * Scalar(f, 2L) + R.get(0, j));
        continue;
      }
      for (std::size_t j = 0; j < n; ++j)
        if (rng() % 3) R.set(i, j, Scalar(f, static_cast<long>(rng() % 9) - 4));
    }
    RelationData d = relation_morphism(n, R);
    c.expect(d.r == oracle::rank(R), "rank differs from the oracle in case " + std::to_string(t));
    oracle::Dense kappa = nullspace(R, n);
    Matrix K = from_oracle(kappa, f, n);
    c.expect(check_exactness(d, K), "not exact in case " + std::to_string(t));
    c.expect(oracle::is_zero(oracle::multiply(kappa, oracle::to_dense(d.F()))),
             "kappa F != 0 in case " + std::to_string(t));
    if (K.rows() > 0) {
      oracle::Dense shorter = kappa;
      shorter.a.pop_back();
      c.expect(!check_exactness(d, from_oracle(shorter, f, n)),
               "a kappa with a larger kernel passed in case " + std::to_string(t));
    }
  }
}

// --- 2, 3 ---

GmmpAlgebra free_gmmp(std::size_t n) {
  std::string text = "V";
  for (std::size_t i = 1; i <= n; ++i) text += " x" + std::to_string(i);
  text += "\nW w\nX";
  for (std::size_t i = 1; i <= n; ++i) text += " x" + std::to_string(i);
  return parse_gmmp(text + "\n");
}

void free_law(Check& c) {
  for (std::size_t n : {1u, 2u, 3u}) {
    HullResult h = compute_hull(free_gmmp(n), 5);
    c.expect(h.last().relations().empty(), "relations found for |X| = " + std::to_string(n));
    c.expect(h.dimension_sequence == oracle::free_dims(n, 5), "dims differ for |X| = " + std::to_string(n));
  }
}

void commutator(Check& c) {
  GmmpAlgebra L = parse_gmmp(data("commutator.gmmp"));
  HullResult h = compute_hull(L, 6);
  auto rels = canonical_relations(h.last());
  c.expect(rels.size() == 1, "expected exactly one relation");
  if (!rels.empty()) c.expect(rels[0].render(h.ordering) == "x*y - y*x", "relation " + rels[0].render(h.ordering));
  c.expect(h.stabilized_at && *h.stabilized_at == 2, "stabilizedAtDegree != 2");
  c.expect(h.dimension_sequence == oracle::commutative_dims(6), "dims differ from binomial counts");
  c.expect(h.dimension_sequence == std::vector<std::size_t>{1, 3, 6, 10, 15, 21, 28}, "dims");
}

// --- 4, 8 ---

std::vector<std::string> presentation_corpus() {
  std::vector<std::string> out{"gens x, y", "gens x; rel x*x", "gens x; rel x*x*x", "gens x, y; rel x*y - y*x",
                               "r=2; gens a(1,2,1), b(2,1,1), c(2,1,2); rel a(1,2,1)*b(2,1,1)"};
  std::mt19937 rng(99);
  const char* letters[] = {"x", "y"};
  while (out.size() < 10) {
    std::string text = "gens x, y";
    std::size_t rels = 1 + rng() % 2;
    for (std::size_t k = 0; k < rels; ++k) {
      std::string rel;
      std::size_t terms = 1 + rng() % 3;
      for (std::size_t t = 0; t < terms; ++t) {
        long coef = 1 + static_cast<long>(rng() % 3);
        std::string w;
        std::size_t len = 2 + rng() % 2;
        for (std::size_t i = 0; i < len; ++i) w += (w.empty() ? "" : "*") + std::string(letters[rng() % 2]);
        rel += (rel.empty() ? "" : (rng() % 2 ? " + " : " - ")) + std::to_string(coef) + "*" + w;
      }
      text += "; rel " + rel;
    }
    out.push_back(text);
  }
  return out;
}

void round_trip(Check& c) {
  for (const auto& text : presentation_corpus()) {
    Presentation p = parse_presentation(text);
    HullResult h = presentation_of_formal_algebra(p, 4);
    c.expect(h.dimension_sequence == quotient_basis(p, 4).dimension_sequence(), "dims differ for " + text);
  }
}

void choice_independence(Check& c) {
  for (const auto& text : presentation_corpus()) {
    Presentation p = parse_presentation(text);
    HullOptions rev;
    rev.ordering = Ordering::deglex(p.alphabet->size());
    rev.ordering->reversed = true;
    HullResult f = presentation_of_formal_algebra(p, 4), r = presentation_of_formal_algebra(p, 4, rev);
    c.expect(f.dimension_sequence == r.dimension_sequence, "dims changed for " + text);
    c.expect(f.last().relations().size() == r.last().relations().size(), "relation count changed for " + text);
    // With one letter there is a single ordering and nothing can change.
    if (p.alphabet->size() >= 2)
      c.expect(make_report(f, "present", text).choice_log != make_report(r, "present", text).choice_log,
               "choice log unchanged for " + text);
  }
}

// --- 5, 6, 7 ---

struct Case {
  std::string name;
  FiniteAlgebra A;
  std::vector<ModuleRep> modules;
};

Case nilpotent(std::size_t n) {
  AlgebraInput in = parse_algebra("gens x; rel x^" + std::to_string(n) + "; truncate " + std::to_string(n));
  return {"k[x]/(x^" + std::to_string(n) + ")", in.algebra, vertex_simples(in.algebra, *in.truncation)};
}

Case from_text(const std::string& name, const std::string& algebra, const std::string& modules) {
  AlgebraInput in = parse_algebra(algebra);
  return {name, in.algebra, parse_modules(modules, in)};
}

std::vector<Case> algebra_corpus() {
  return {
      from_text("k", "basis 1\nunit 1\n", "module k dim 1\n"),
      from_text("k x k", "basis e1 e2\nunit e1 + e2\nmul e1 e1 = e1\nmul e2 e2 = e2\n",
                "module S1 dim 1\nact e1 = [1]\nmodule S2 dim 1\nact e2 = [1]\n"),
      nilpotent(2),
      nilpotent(3),
      from_text("upper triangular",
                "basis e11 e12 e22\nunit e11 + e22\nmul e11 e11 = e11\nmul e11 e12 = e12\n"
                "mul e12 e22 = e12\nmul e22 e22 = e22\n",
                "module S1 dim 1\nact e11 = [1]\nmodule S2 dim 1\nact e22 = [1]\n"),
  };
}

SparseVector unit(std::size_t i) {
  SparseVector v(Q);
  v.set(i, Scalar::one(Q));
  return v;
}

void hochschild(Check& c) {
  for (const auto& k : algebra_corpus()) {
    CochainComplex C = hochschild_complex(k.A, k.modules, 3);
    for (std::size_t n = 0; n + 1 < 3; ++n)
      c.expect((C.differential(n + 1) * C.differential(n)).is_zero(), k.name + ": d d != 0");
    for (std::size_t p = 0; p <= 1; ++p)
      for (std::size_t i = 0; i < C.dim(p); ++i)
        for (std::size_t j = 0; j < C.dim(1); ++j) {
          SparseVector f = unit(i), g = unit(j);
          SparseVector lhs = C.apply_d(p + 1, C.cup(p, f, 1, g));
          SparseVector rhs = C.cup(p + 1, C.apply_d(p, f), 1, g);
          SparseVector second = C.cup(p, f, 2, C.apply_d(1, g));
          rhs = p % 2 ? rhs - second : rhs + second;
          c.expect(lhs == rhs, k.name + ": Leibniz fails");
        }
    const auto r = static_cast<std::uint32_t>(k.modules.size());
    for (std::uint32_t i = 0; i < r; ++i)
      for (std::uint32_t j = 0; j < r; ++j)
        c.expect(C.cohomology_dim(1, i, j) == first_order_deformations(k.A, k.modules, i, j),
                 k.name + ": H^1 differs from the first-order count");
  }
}

void completion(Check& c) {
  for (std::size_t n : {2u, 3u, 4u}) {
    const std::string tag = "n = " + std::to_string(n);
    Case k = nilpotent(n);
    CompletionResult res = complete(k.A, k.modules, 6);
    Presentation own = parse_presentation("gens x; rel x^" + std::to_string(n));
    c.expect(res.hull.dimension_sequence == quotient_basis(own, 6).dimension_sequence(), tag + ": dims");
    auto rels = canonical_relations(res.hull.last());
    c.expect(rels.size() == 1, tag + ": expected one relation");
    if (rels.size() == 1) {
      std::size_t lo = 64, hi = 0;
      for (const auto& [w, coef] : rels[0].terms()) {
        lo = std::min(lo, w.degree());
        hi = std::max(hi, w.degree());
      }
      c.expect(lo == n && hi == n, tag + ": relation not of exact degree n");
    }
    // Lifting oracle: x -> t lifts through every order below n, not to n.
    Presentation free = parse_presentation("gens t");
    Word t = *free.alphabet->word({0});
    ModuleDeformation partial;
    partial[t] = std::vector<Matrix>(k.A.dim(), Matrix(Q, 1, 1));
    partial[t][*k.A.index("x")] = Matrix::from_dense(Q, {{1}});
    for (std::size_t level = 1; level < n; ++level) {
      FormalTruncation S = quotient_basis(free, level + 1);
      auto lift = lift_module_structure(k.A, k.modules, S, partial, level);
      bool expect = level + 1 < n;
      c.expect(lift.has_value() == expect, tag + ": lifting to order " + std::to_string(level + 1));
      if (!lift) break;
      for (auto& [w, m] : lift->particular) partial[w] = m;
    }
  }
}

void tangent(Check& c) {
  for (const auto& k : algebra_corpus()) {
    CompletionResult res = complete(k.A, k.modules, 3);
    c.expect(tangent_check(res, hochschild_complex(k.A, k.modules, 2)), k.name + ": tangent check");
  }
}

// --- 9 ---

void words_example(Check& c) {
  const std::string text = data("words_example.gmmp");
  GmmpAlgebra L = parse_gmmp(text);
  RunReport r = hull_report(L, 3, {}, text);
  c.expect(render(r, ReportFormat::text) == slurp(GMMP_GOLDEN_DIR "/words_example.txt"),
           "report differs from the golden file");
  HullResult h = compute_hull(L, 3);
  auto stages = oracle::ExampleHull().run(3);
  c.expect(stages.size() == h.truncations.size(), "stage count");
  for (std::size_t k = 0; k < stages.size() && k < h.truncations.size(); ++k) {
    std::string why;
    c.expect(oracle::matches(stages[k], h.truncations[k], why), "dense re-derivation: " + why);
    c.expect(stages[k].relation_count == h.relation_counts[k], "dense re-derivation: relation count");
  }
  HullResult table = compute_hull(parse_gmmp(data("words_example_table.gmmp")), 3);
  c.expect(canonical_relations(table.last()).size() == canonical_relations(h.last()).size(), "table form");
}

// --- 10 ---

void fuzz(Check& c) {
  std::mt19937_64 rng(10);
  const std::string tokens[] = {"V ", "W ", "W = V\n", "X ", "d ", "cup ", "field ", "gens ", "rel ", "r=",
                                "basis words ", "degree ", "vertices ", "unit ", "x", "y", "v0", "v1", "a(1,2,1)",
                                "=", "+", "-", "*", "/", "^", "(", ")", ",", ";", "\n", " ", "#", "0", "1",
                                "7", "99999999999999999999", "e(1)"};
  for (int t = 0; t < 100000; ++t) {
    std::string s;
    std::size_t len = rng() % 64;
    if (t % 2 == 0)
      for (std::size_t i = 0; i < len; ++i) s += static_cast<char>(rng() % 256);
    else
      for (std::size_t i = 0; i < len / 3; ++i) s += tokens[rng() % std::size(tokens)];
    for (int which = 0; which < 2; ++which) {
      try {
        if (which == 0)
          parse_gmmp(s);
        else
          parse_presentation(s);
      } catch (const ParseError& e) {
        c.expect(e.line() >= 1 && e.column() >= 1, "diagnostic without a position");
      } catch (const std::exception& e) {
        c.expect(false, std::string("non-parse exception: ") + e.what());
      }
    }
  }
}

}  // namespace

int main() {
  criterion(1, "exactness of relation morphisms", 5000, exactness);
  criterion(2, "free hull law", 1000, free_law);
  criterion(3, "commutator hull", 2000, commutator);
  criterion(4, "round trip of presentations", 30000, round_trip);
  criterion(5, "Hochschild d d = 0, Leibniz, H^1 counts", 10000, hochschild);
  criterion(6, "completion of k[x]/(x^n)", 20000, completion);
  criterion(7, "tangent check", 10000, tangent);
  criterion(8, "choice independence", 30000, choice_independence);
  criterion(9, "example golden report", 2000, words_example);
  criterion(10, "parser fuzzing", 60000, fuzz);
  std::printf("%s\n", failures ? "acceptance: FAIL" : "acceptance: PASS");
  return failures ? 1 : 0;
}
