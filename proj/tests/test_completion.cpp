#include <gtest/gtest.h>

#include <random>

#include "gmmp/algebra.hpp"
#include "gmmp/completion.hpp"
#include "gmmp/error.hpp"
#include "gmmp/hochschild.hpp"
#include "gmmp/parse.hpp"
#include "gmmp/report.hpp"
#include "oracles.hpp"

using namespace gmmp;

namespace {

const Field Q = Field::rationals();

struct Case {
  std::string name;
  FiniteAlgebra A;
  std::vector<ModuleRep> modules;
};

Case nilpotent(std::size_t n) {
  AlgebraInput in = parse_algebra("gens x; rel x^" + std::to_string(n) + "; truncate " + std::to_string(n));
  return {"k[x]/(x^" + std::to_string(n) + ")", in.algebra, vertex_simples(in.algebra, *in.truncation)};
}

Case upper() {
  FiniteAlgebra A = upper_triangular(Q, 2);
  std::vector<ModuleRep> simples;
  for (std::size_t v : {0u, 1u}) {
    ModuleRep M{"S" + std::to_string(v + 1), 1, {}};
    for (const auto& name : A.names()) {
      bool hit = name == (v == 0 ? "e11" : "e22");
      M.action.push_back(Matrix::from_dense(Q, {{hit ? 1 : 0}}));
    }
    simples.push_back(M);
  }
  return {"upper triangular", A, simples};
}

Case semisimple(std::size_t r) {
  FiniteAlgebra A = split_semisimple(Q, r);
  std::vector<ModuleRep> simples;
  for (std::size_t v = 0; v < r; ++v) {
    ModuleRep M{"S" + std::to_string(v + 1), 1, {}};
    for (std::size_t a = 0; a < r; ++a) M.action.push_back(Matrix::from_dense(Q, {{a == v ? 1 : 0}}));
    simples.push_back(M);
  }
  return {"k^" + std::to_string(r), A, simples};
}

std::vector<Case> corpus() {
  return {semisimple(1), semisimple(2), nilpotent(2), nilpotent(3), upper()};
}

// Dense oracle: dim Z^1 - dim B^1 of derivations A -> Hom(M_i, M_j), with
// f(ab) = R_a f(b) + f(a) R_b and B^1 spanned by R_a phi - phi R_a.
std::size_t ext1_oracle(const FiniteAlgebra& A, const ModuleRep& Mi, const ModuleRep& Mj) {
  const std::size_t n = A.dim(), di = Mi.dim, dj = Mj.dim, per = di * dj;
  auto var = [&](std::size_t a, std::size_t p, std::size_t q) { return a * per + p * dj + q; };
  oracle::Dense eq;
  eq.p = A.field().characteristic;
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      for (std::size_t p = 0; p < di; ++p)
        for (std::size_t q = 0; q < dj; ++q) {
          std::vector<mpq_class> row(n * per, 0);
          for (const auto& [k, c] : A.product(a, b)) row[var(k, p, q)] += c.rational();
          for (std::size_t x = 0; x < di; ++x) row[var(b, x, q)] -= Mi.action[a].get(p, x).rational();
          for (std::size_t x = 0; x < dj; ++x) row[var(a, p, x)] -= Mj.action[b].get(x, q).rational();
          eq.a.push_back(row);
        }
  std::size_t z1 = n * per - oracle::rank(eq);
  oracle::Dense bnd;
  bnd.p = eq.p;
  for (std::size_t p0 = 0; p0 < di; ++p0)
    for (std::size_t q0 = 0; q0 < dj; ++q0) {
      std::vector<mpq_class> row(n * per, 0);
      for (std::size_t a = 0; a < n; ++a)
        for (std::size_t p = 0; p < di; ++p)
          for (std::size_t q = 0; q < dj; ++q) {
            mpq_class v = 0;
            if (q == q0) v += Mi.action[a].get(p, p0).rational();
            if (p == p0) v -= Mj.action[a].get(q0, q).rational();
            row[var(a, p, q)] = v;
          }
      bnd.a.push_back(row);
    }
  return z1 - oracle::rank(bnd);
}

// Conjugates a module by an invertible matrix P: R'_a = P R_a P^{-1}.
ModuleRep conjugate(const ModuleRep& M, const Matrix& P, const Matrix& Pinv) {
  ModuleRep out = M;
  for (auto& R : out.action) R = P * R * Pinv;
  return out;
}

}  // namespace

TEST(FiniteAlgebra, RejectsNonAssociativeTable) {
  FiniteAlgebra::Table t;
  auto e = [](std::size_t i) {
    SparseVector v(Q);
    v.set(i, Scalar::one(Q));
    return v;
  };
  // basis 1, a, b with a*b = a and b*a = b but a*(b*a) != (a*b)*a fails here
  t[{1, 2}] = e(1);
  t[{2, 1}] = e(1);
  t[{1, 1}] = e(2);
  for (std::size_t i = 0; i < 3; ++i) {
    t[{0, i}] = e(i);
    t[{i, 0}] = e(i);
  }
  EXPECT_THROW(FiniteAlgebra(Q, {"1", "a", "b"}, t, e(0)), PreconditionError);
}

TEST(Modules, Simplicity) {
  Case u = upper();
  for (const auto& M : u.modules) EXPECT_TRUE(is_simple(u.A, M));
  // the natural 2-dim row module of upper triangular matrices is not simple
  ModuleRep nat{"N", 2, {}};
  for (const auto& name : u.A.names()) {
    long a = name == "e11", b = name == "e12", c = name == "e22";
    nat.action.push_back(Matrix::from_dense(Q, {{a, b}, {0, c}}));
  }
  check_module(u.A, nat);
  EXPECT_FALSE(is_simple(u.A, nat));
  EXPECT_THROW(hochschild_complex(u.A, {nat}, 2), PreconditionError);
}

TEST(Hochschild, DifferentialSquaresToZero) {
  for (const auto& c : corpus()) {
    CochainComplex C = hochschild_complex(c.A, c.modules, 3);
    for (std::size_t n = 0; n + 1 < 3; ++n)
      EXPECT_TRUE((C.differential(n + 1) * C.differential(n)).is_zero()) << c.name << " level " << n;
  }
}

TEST(Hochschild, LeibnizOnAllOneCochainPairs) {
  for (const auto& c : corpus()) {
    CochainComplex C = hochschild_complex(c.A, c.modules, 3);
    for (std::size_t i = 0; i < C.dim(1); ++i)
      for (std::size_t j = 0; j < C.dim(1); ++j) {
        SparseVector f(Q), g(Q);
        f.set(i, Scalar::one(Q));
        g.set(j, Scalar::one(Q));
        SparseVector lhs = C.apply_d(2, C.cup(1, f, 1, g));
        SparseVector rhs = C.cup(2, C.apply_d(1, f), 1, g) - C.cup(1, f, 2, C.apply_d(1, g));
        ASSERT_EQ(lhs, rhs) << c.name;
      }
  }
}

TEST(Hochschild, ExtDimensions) {
  CochainComplex k = hochschild_complex(semisimple(1).A, semisimple(1).modules, 2);
  EXPECT_EQ(k.cohomology_dim(1, 0, 0), 0u);
  Case n2 = nilpotent(2);
  CochainComplex c2 = hochschild_complex(n2.A, n2.modules, 3);
  EXPECT_EQ(c2.cohomology_dim(1, 0, 0), 1u);
  EXPECT_EQ(c2.cohomology_dim(2, 0, 0), 1u);
  Case u = upper();
  CochainComplex cu = hochschild_complex(u.A, u.modules, 2);
  EXPECT_EQ(cu.cohomology_dim(1, 0, 1) + cu.cohomology_dim(1, 1, 0), 1u);
  EXPECT_EQ(cu.cohomology_dim(1, 0, 0) + cu.cohomology_dim(1, 1, 1), 0u);
}

TEST(Hochschild, ExtMatchesDenseOracleAndLifting) {
  for (const auto& c : corpus()) {
    CochainComplex C = hochschild_complex(c.A, c.modules, 2);
    const auto r = static_cast<std::uint32_t>(c.modules.size());
    for (std::uint32_t i = 0; i < r; ++i)
      for (std::uint32_t j = 0; j < r; ++j) {
        std::size_t h1 = C.cohomology_dim(1, i, j);
        EXPECT_EQ(h1, ext1_oracle(c.A, c.modules[i], c.modules[j])) << c.name;
        EXPECT_EQ(h1, first_order_deformations(c.A, c.modules, i, j)) << c.name;
      }
  }
}

TEST(Hochschild, ExtInvariantUnderBasisChanges) {
  // M_2(k) on row vectors, conjugated by random invertible matrices.
  AlgebraInput m2 = parse_algebra(
      "basis e11 e12 e21 e22\nunit e11 + e22\n"
      "mul e11 e11 = e11\nmul e11 e12 = e12\nmul e12 e21 = e11\nmul e12 e22 = e12\n"
      "mul e21 e11 = e21\nmul e21 e12 = e22\nmul e22 e21 = e21\nmul e22 e22 = e22\n");
  std::vector<ModuleRep> rows = parse_modules(
      "module V dim 2\nact e11 = [1 0; 0 0]\nact e12 = [0 1; 0 0]\n"
      "act e21 = [0 0; 1 0]\nact e22 = [0 0; 0 1]\n", m2);
  std::mt19937 rng(5);
  for (int trial = 0; trial < 4; ++trial) {
    long a = 1 + rng() % 3, b = static_cast<long>(rng() % 5) - 2, c = static_cast<long>(rng() % 5) - 2;
    // P = [[a, b], [0, 1]] composed with [[1, 0], [c, 1]]
    Matrix P = Matrix::from_dense(Q, {{a, b}, {0, 1}}) * Matrix::from_dense(Q, {{1, 0}, {c, 1}});
    Matrix Pinv = Matrix::from_dense(Q, {{1, 0}, {-c, 1}}) * [&] {
      Matrix m(Q, 2, 2);
      m.set(0, 0, Scalar(Q, mpq_class(1, a)));
      m.set(0, 1, Scalar(Q, mpq_class(-b, a)));
      m.set(1, 1, Scalar::one(Q));
      return m;
    }();
    ASSERT_EQ(P * Pinv, Matrix::identity(Q, 2));
    ModuleRep M = conjugate(rows[0], P, Pinv);
    ASSERT_TRUE(is_simple(m2.algebra, M));
    CochainComplex C = hochschild_complex(m2.algebra, {M}, 3);
    EXPECT_EQ(C.cohomology_dim(1, 0, 0), 0u);
    EXPECT_EQ(C.cohomology_dim(1, 0, 0), ext1_oracle(m2.algebra, M, M));
    EXPECT_TRUE((C.differential(2) * C.differential(1)).is_zero());
  }
  // k[x]/(x^3) on the basis 1, u = 2x + x^2, x^2: u*u = 4 x^2.
  AlgebraInput other = parse_algebra("basis 1 u x2\nunit 1\nmul u u = 4*x2\n");
  std::vector<ModuleRep> k = parse_modules("module k dim 1\n", other);
  CochainComplex C = hochschild_complex(other.algebra, k, 3);
  Case std3 = nilpotent(3);
  CochainComplex D = hochschild_complex(std3.A, std3.modules, 3);
  EXPECT_EQ(C.cohomology_dim(1, 0, 0), D.cohomology_dim(1, 0, 0));
  EXPECT_EQ(C.cohomology_dim(2, 0, 0), D.cohomology_dim(2, 0, 0));
}

TEST(Hochschild, ExtBasis) {
  EXPECT_TRUE(ext_basis(hochschild_complex(semisimple(1).A, semisimple(1).modules, 2)).empty());
  auto cls = ext_basis(hochschild_complex(nilpotent(2).A, nilpotent(2).modules, 2));
  ASSERT_EQ(cls.size(), 1u);
  Case u = upper();
  auto uc = ext_basis(hochschild_complex(u.A, u.modules, 2));
  ASSERT_EQ(uc.size(), 1u);
  EXPECT_NE(uc[0].source, uc[0].target);
  EXPECT_EQ(default_letters(uc, 2)[0], "x(" + std::to_string(uc[0].source + 1) + "," +
                                            std::to_string(uc[0].target + 1) + ",1)");
}

TEST(Lifting, DualNumbersAndObstruction) {
  Case n2 = nilpotent(2);
  const std::size_t x = *n2.A.index("x"), one = *n2.A.index("1");
  FormalTruncation dual = quotient_basis(parse_presentation("gens t; rel t*t"), 2);
  FormalTruncation cubic = quotient_basis(parse_presentation("gens t; rel t*t*t"), 3);
  Word t = *dual.alphabet()->word({0});
  for (long a : {0L, 1L, 2L, -3L}) {
    ModuleDeformation partial;
    partial[t] = std::vector<Matrix>(2, Matrix(Q, 1, 1));
    partial[t][x] = Matrix::from_dense(Q, {{a}});
    partial[t][one] = Matrix(Q, 1, 1);
    EXPECT_TRUE(lift_module_structure(n2.A, n2.modules, dual, partial, 1)) << a;
    auto lifted = lift_module_structure(n2.A, n2.modules, cubic, partial, 1);
    EXPECT_EQ(lifted.has_value(), a == 0) << a;
  }
}

TEST(Lifting, TrivialAlgebraHasUniqueLift) {
  Case k = semisimple(1);
  FormalTruncation S = quotient_basis(parse_presentation("gens t"), 2);
  Word t = *S.alphabet()->word({0});
  ModuleDeformation partial;
  partial[t] = {Matrix(Q, 1, 1)};
  auto l = lift_module_structure(k.A, k.modules, S, partial, 1);
  ASSERT_TRUE(l);
  EXPECT_TRUE(l->directions.empty());
}

TEST(Completion, Semisimple) {
  Case c = semisimple(2);
  CompletionResult r = complete(c.A, c.modules, 3);
  EXPECT_TRUE(r.classes.empty());
  EXPECT_EQ(r.hull.last().dimension(), 2u);
  EXPECT_EQ(r.endomorphisms.dim(), 2u);
  EXPECT_TRUE(tangent_check(r, hochschild_complex(c.A, c.modules, 2)));
}

TEST(Completion, NilpotentMatchesCommutativeCompletion) {
  for (std::size_t n : {2u, 3u, 4u}) {
    Case c = nilpotent(n);
    CompletionResult r = complete(c.A, c.modules, 6);
    std::vector<std::size_t> expect;
    for (std::size_t N = 0; N <= 6; ++N) expect.push_back(std::min(N + 1, n));
    EXPECT_EQ(r.hull.dimension_sequence, expect) << n;
    auto rels = canonical_relations(r.hull.last());
    ASSERT_EQ(rels.size(), 1u);
    EXPECT_EQ(rels[0].low_degree(), n);
    EXPECT_EQ(rels[0].degree(), n);
    EXPECT_EQ(r.endomorphisms.dim(), n);
    EXPECT_TRUE(tangent_check(r, hochschild_complex(c.A, c.modules, 2)));
  }
}

TEST(Completion, IotaIsHomomorphismAndDeltaRecoversAction) {
  for (const auto& c : corpus()) {
    CompletionResult r = complete(c.A, c.modules, 3);
    std::size_t total = 0;
    for (const auto& M : c.modules) total += M.dim;
    for (std::size_t a = 0; a < c.A.dim(); ++a)
      EXPECT_EQ(delta(r, r.iota[a], total), total_action(c.modules, a)) << c.name;
    for (std::size_t a = 0; a < c.A.dim(); ++a)
      for (std::size_t b = 0; b < c.A.dim(); ++b) {
        SparseVector lhs(Q);
        for (const auto& [k, s] : c.A.product(a, b)) lhs.axpy(s, r.iota[k]);
        EXPECT_EQ(lhs, r.endomorphisms.multiply(r.iota[a], r.iota[b])) << c.name;
      }
  }
}

TEST(Completion, UpperTriangular) {
  Case u = upper();
  CompletionResult r = complete(u.A, u.modules, 4);
  EXPECT_EQ(r.hull.generators.size(), 1u);
  EXPECT_EQ(r.hull.last().dimension(), 3u);
  EXPECT_EQ(r.endomorphisms.dim(), 3u);
  EXPECT_TRUE(tangent_check(r, hochschild_complex(u.A, u.modules, 2)));
}

TEST(Completion, RelationCountBoundedByExt2) {
  for (const auto& c : corpus()) {
    CochainComplex C = hochschild_complex(c.A, c.modules, 3);
    CompletionResult r = complete(c.A, c.modules, 4);
    std::size_t ext2 = 0;
    const auto n = static_cast<std::uint32_t>(c.modules.size());
    for (std::uint32_t i = 0; i < n; ++i)
      for (std::uint32_t j = 0; j < n; ++j) ext2 += C.cohomology_dim(2, i, j);
    EXPECT_LE(canonical_relations(r.hull.last()).size(), ext2) << c.name;
  }
}
