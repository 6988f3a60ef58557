#include <gtest/gtest.h>

#include <fstream>
#include <random>
#include <sstream>

#include "gmmp/completion.hpp"
#include "gmmp/error.hpp"
#include "gmmp/parse.hpp"
#include "gmmp/report.hpp"

using namespace gmmp;

namespace {

const Field Q = Field::rationals();

std::string read(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string data(const std::string& name) { return read(std::string(GMMP_TEST_DATA) + "/" + name); }
std::string golden(const std::string& name) {
  return read(std::string(GMMP_TEST_DATA) + "/../golden/" + name);
}

SparseVector unit(std::size_t i) {
  SparseVector v(Q);
  v.set(i, Scalar::one(Q));
  return v;
}

template <class F>
std::string parse_error_of(F&& f) {
  try {
    f();
  } catch (const ParseError& e) {
    return e.what();
  }
  return "";
}

}  // namespace

TEST(ParseGmmp, ExampleTableEntries) {
  GmmpAlgebra L = parse_gmmp(data("words_example_table.gmmp"));
  EXPECT_EQ(L.dim_v(), 15u);
  EXPECT_TRUE(L.identified());
  EXPECT_EQ(L.d(0), unit(0) + unit(3) + unit(6));
  EXPECT_TRUE(L.d(3).empty());
  EXPECT_EQ(L.d(8), unit(8) + unit(11));
  EXPECT_EQ(L.cup(1, 4), unit(8));
  ASSERT_EQ(L.generators().size(), 2u);
  EXPECT_EQ(L.generators()[1].letter, "y");
}

TEST(ParseGmmp, WordsFormMatchesTable) {
  ParseOptions o;
  o.degree = 1;
  GmmpAlgebra w = parse_gmmp(data("words_example.gmmp"), o);
  EXPECT_EQ(parse_gmmp(data("words_example.gmmp")).materialized_degree(), 4u);
  GmmpAlgebra t = parse_gmmp(data("words_example_table.gmmp"));
  EXPECT_TRUE(w.lazy());
  EXPECT_EQ(w.materialized_degree(), 3u);
  ASSERT_EQ(w.dim_v(), t.dim_v());
  for (std::size_t i = 0; i < t.dim_v(); ++i) EXPECT_EQ(w.d(i), t.d(i)) << i;
}

TEST(ParseGmmp, UnlistedEntriesAreZero) {
  GmmpAlgebra L = parse_gmmp("V a b\nW w\nX a\n");
  EXPECT_TRUE(L.d_matrix().is_zero());
  EXPECT_TRUE(L.cup(0, 1).empty());
}

TEST(ParseGmmp, PositionedErrors) {
  std::string e = parse_error_of([] { parse_gmmp("V a\nW w\nd a = v99\n"); });
  EXPECT_NE(e.find("v99"), std::string::npos) << e;
  EXPECT_EQ(e.rfind("3:", 0), 0u) << e;
  EXPECT_NE(parse_error_of([] { parse_gmmp("V a\nV b\n"); }), "");
  EXPECT_NE(parse_error_of([] { parse_gmmp("field 4\nV a\n"); }), "");
  EXPECT_NE(parse_error_of([] { parse_gmmp("V a\nW w\ncup a a = 1/0 w\n"); }), "");
}

TEST(ParseGmmp, FieldPrecedence) {
  const std::string text = "field 5\nV a\nW w\nX a\n";
  EXPECT_EQ(parse_gmmp(text).field(), Field::prime(5));
  ParseOptions o;
  o.field = Field::prime(3);
  EXPECT_EQ(parse_gmmp("V a\nW w\n", o).field(), Field::prime(3));
  EXPECT_EQ(parse_gmmp(text, o).field(), Field::prime(5));
  o.force_field = true;
  EXPECT_EQ(parse_gmmp(text, o).field(), Field::prime(3));
}

TEST(ParsePresentation, Examples) {
  Presentation c = parse_presentation("gens x,y; rel x*y - y*x");
  EXPECT_EQ(c.alphabet->size(), 2u);
  ASSERT_EQ(c.relations.size(), 1u);
  EXPECT_EQ(c.relations[0].render(Ordering::deglex(2)), "x*y - y*x");
  Presentation q = parse_presentation("r=2; gens x(1,2,1); rel ;");
  EXPECT_EQ(q.alphabet->vertices(), 2u);
  EXPECT_TRUE(q.relations.empty());
  Presentation f = parse_presentation("field 5\ngens x\nrel 6*x*x\n");
  EXPECT_EQ(f.field, Field::prime(5));
  EXPECT_EQ(f.relations[0].terms().begin()->second.residue(), 1u);
}

TEST(ParsePresentation, Errors) {
  std::string e = parse_error_of([] { parse_presentation("gens x; rel x*x - 1"); });
  EXPECT_NE(e.find("constant"), std::string::npos) << e;
  e = parse_error_of([] { parse_presentation("gens x; rel x*y"); });
  EXPECT_NE(e.find("unknown letter y"), std::string::npos) << e;
  EXPECT_NE(parse_error_of([] { parse_presentation("gens x(1,2,1)"); }), "");
  EXPECT_NE(parse_error_of([] { parse_presentation("field 5; gens x; rel 1/5*x*x"); }), "");
  EXPECT_NE(parse_error_of([] { parse_presentation("gens x; rel x^65"); }), "");
}

TEST(ParseOrdering, Forms) {
  Alphabet a(std::vector<std::string>{"x", "y"});
  EXPECT_FALSE(parse_ordering("deglex", a).reversed);
  EXPECT_TRUE(parse_ordering("deglex:reversed", a).reversed);
  Ordering yx = parse_ordering("deglex:y,x", a);
  EXPECT_EQ(parse_presentation("gens x,y; rel x*y - y*x").relations[0].render(yx), "-y*x + x*y");
  EXPECT_THROW(parse_ordering("lex", a), ParseError);
  EXPECT_THROW(parse_ordering("deglex:x,z", a), ParseError);
}

TEST(ParseAlgebra, TableAndPresented) {
  AlgebraInput t = parse_algebra("basis 1 x x2\nunit 1\nmul x x = x2\n");
  EXPECT_EQ(t.algebra.dim(), 3u);
  EXPECT_FALSE(t.truncation);
  AlgebraInput p = parse_algebra("gens x; rel x^3; truncate 3");
  ASSERT_TRUE(p.truncation);
  EXPECT_EQ(p.algebra.dim(), 3u);
  EXPECT_EQ(parse_modules("simples", p).size(), 1u);
  std::vector<ModuleRep> m = parse_modules("module k dim 1\n", t);
  ASSERT_EQ(m.size(), 1u);
  EXPECT_EQ(m[0].action[0], Matrix::identity(Q, 1));
  EXPECT_TRUE(m[0].action[1].is_zero());
}

TEST(ParseAlgebra, Errors) {
  EXPECT_THROW(parse_algebra("basis 1 x\nunit 1\nmul x y = x\n"), ParseError);
  AlgebraInput t = parse_algebra("basis 1 x\nunit 1\n");
  EXPECT_THROW(parse_modules("module M dim 2\nact x = [1 0; 0 1]\n", t), ParseError);
  EXPECT_THROW(parse_modules("module M dim 2\nact x = [1 0 0; 0 1]\n", t), ParseError);
}

TEST(ParseRelmorph, Statements) {
  RelmorphInput in = parse_relmorph("n 3\nrel 1 1 -1\nkappa 1 0 1\nkappa 0 1 1\n");
  EXPECT_EQ(in.n, 3u);
  EXPECT_EQ(in.relations.rows(), 1u);
  ASSERT_TRUE(in.kappa);
  EXPECT_EQ(in.kappa->rows(), 2u);
  EXPECT_FALSE(in.rhs);
  RelmorphInput aff = parse_relmorph("n 2\nrel 1 1 = 2\n");
  ASSERT_TRUE(aff.rhs);
  EXPECT_THROW(parse_relmorph("n 2\nrel 1 1 1\n"), ParseError);
}

TEST(Report, JsonRoundTrip) {
  std::vector<std::pair<std::string, std::size_t>> cases{
      {"commutator.gmmp", 4}, {"words_example.gmmp", 3}, {"words_example_table.gmmp", 3}};
  for (const auto& [file, bound] : cases) {
    std::string text = data(file);
    GmmpAlgebra L = parse_gmmp(text);
    RunReport r = hull_report(L, bound, {}, text);
    r.timing_ms = 1.5;
    RunReport back = parse_report(render(r, ReportFormat::json));
    EXPECT_EQ(back, r) << file;
    EXPECT_EQ(render(back, ReportFormat::text, true), render(r, ReportFormat::text, true));
  }
  EXPECT_THROW(parse_report("{"), ParseError);
  EXPECT_THROW(parse_report("{\"schema\": \"other/1\"}"), ParseError);
}

TEST(Report, TextContents) {
  std::string text = data("commutator.gmmp");
  std::string out = render(hull_report(parse_gmmp(text), 4, {}, text), ReportFormat::text);
  EXPECT_NE(out.find("relations: x*y - y*x\n"), std::string::npos) << out;
  EXPECT_NE(out.find("stabilized at degree 2\n"), std::string::npos) << out;
  EXPECT_EQ(out.find("timing"), std::string::npos);
  GmmpAlgebra free = parse_gmmp("V x\nW w\nX x\n");
  std::string f = render(make_report(compute_hull(free, 3), "hull", ""), ReportFormat::text);
  EXPECT_NE(f.find("relations: none\n"), std::string::npos) << f;
}

TEST(Report, ChoiceLogOnlyOnRequest) {
  std::string text = data("commutator.gmmp");
  RunReport r = hull_report(parse_gmmp(text), 3, {}, text);
  EXPECT_EQ(render(r, ReportFormat::text).find("rewritten"), std::string::npos);
  EXPECT_NE(render(r, ReportFormat::text, true).find("rewritten y*x"), std::string::npos)
      << render(r, ReportFormat::text, true);
}

TEST(Report, Goldens) {
  std::string ex = data("words_example.gmmp");
  EXPECT_EQ(render(hull_report(parse_gmmp(ex), 3, {}, ex), ReportFormat::text),
            golden("words_example.txt"));
  std::string comm = data("commutator.gmmp");
  EXPECT_EQ(render(hull_report(parse_gmmp(comm), 4, {}, comm), ReportFormat::latex),
            golden("commutator.tex"));
}

TEST(Report, LatexPolynomial) {
  EXPECT_EQ(latex_polynomial("x*y - y*x"), "x y - y x");
  EXPECT_EQ(latex_polynomial("x*x*x + 2*x(1,2,1)"), "x^{3} + 2 x_{1,2,1}");
}

TEST(Report, DigestIsFnv1a) {
  EXPECT_EQ(input_digest(""), "cbf29ce484222325");
  EXPECT_EQ(input_digest("a"), "af63dc4c8601ec8c");
}

TEST(Fuzz, ParsersOnlyThrowParseErrors) {
  std::mt19937 rng(17);
  const std::string alphabet = "VWXdcupfieldgensrl x y v0 v1 =+-*/^()[],;:#\n0123456789e";
  for (int t = 0; t < 3000; ++t) {
    std::string s;
    std::size_t len = rng() % 40;
    for (std::size_t i = 0; i < len; ++i)
      s += t % 3 == 0 ? static_cast<char>(rng() % 256) : alphabet[rng() % alphabet.size()];
    for (int which = 0; which < 2; ++which) {
      try {
        if (which == 0)
          parse_gmmp(s);
        else
          parse_presentation(s);
      } catch (const ParseError& e) {
        EXPECT_GE(e.line(), 1u);
        EXPECT_GE(e.column(), 1u);
      } catch (const std::exception& e) {
        ADD_FAILURE() << "non-parse error " << e.what() << " on input of length " << s.size();
      }
    }
  }
}
