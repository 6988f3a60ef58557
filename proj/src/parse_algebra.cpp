#include <map>
#include <set>

#include "gmmp/completion.hpp"
#include "gmmp/parse.hpp"
#include "lexer.hpp"

namespace gmmp {

using detail::Factor;
using detail::Term;
using detail::Tok;
using detail::Token;
using detail::TokenStream;

namespace {

constexpr std::uint32_t kMaxVertices = 64;
constexpr std::size_t kMaxAlgebraDim = 400;
constexpr std::size_t kMaxModuleDim = 64;

Field choose_field(const ParseOptions& o, const std::optional<Field>& file) {
  return o.force_field || !file ? o.field : *file;
}

Field read_field(TokenStream& ts, const Token& kw) {
  std::size_t p = ts.expect_count("a characteristic", 2147483647);
  try {
    return p == 0 ? Field::rationals() : Field::prime(p);
  } catch (const Error& e) {
    ts.fail_at(kw, e.what());
  }
}

Scalar convert(const Scalar& q, Field f, const Token& at) {
  try {
    return Scalar(f, q.rational());
  } catch (const Error& e) {
    TokenStream::fail_at(at, e.what());
  }
}

/// Polynomial from parsed terms (coefficients still over Q).
NCPoly build_polynomial(const std::vector<Term>& terms, const AlphabetPtr& alpha, Field f) {
  NCPoly p(alpha, f);
  for (const auto& t : terms) {
    Scalar c = convert(t.coeff, f, t.at);
    if (t.factors.empty()) {
      if (alpha->graded()) {
        for (std::uint32_t v = 0; v < alpha->vertices(); ++v) p.add_term(alpha->unit(v), c);
      } else {
        p.add_term(alpha->unit(), c);
      }
      continue;
    }
    std::optional<Word> w;
    bool zero = false;
    for (const auto& fac : t.factors) {
      Word piece;
      if (fac.name == "e" && fac.has_args && fac.args.size() == 1 && !alpha->find("e(" + std::to_string(fac.args[0]) + ")")) {
        if (!alpha->graded()) TokenStream::fail_at(fac.at, "idempotents need a matrix alphabet");
        if (fac.args[0] == 0 || fac.args[0] > alpha->vertices())
          TokenStream::fail_at(fac.at, "idempotent outside 1.." + std::to_string(alpha->vertices()));
        piece = alpha->unit(static_cast<std::uint32_t>(fac.args[0] - 1));
      } else {
        auto l = alpha->find(detail::factor_name(fac));
        if (!l) TokenStream::fail_at(fac.at, "unknown letter " + detail::factor_name(fac));
        auto single = alpha->word({*l});
        piece = *single;
      }
      for (std::size_t k = 0; k < fac.power && !zero; ++k) {
        if (!w) {
          w = piece;
        } else if (auto c2 = alpha->concat(*w, piece)) {
          w = std::move(c2);
        } else {
          zero = true;
        }
      }
    }
    if (!zero) p.add_term(*w, c);
  }
  return p;
}

struct PresentationParse {
  Presentation presentation;
  std::optional<std::size_t> truncate;
  Token truncate_at;
};

PresentationParse presentation_statements(TokenStream& ts, const ParseOptions& options) {
  std::optional<Field> file_field;
  std::optional<std::uint32_t> r;
  std::vector<Letter> letters;
  std::optional<Token> gens_at;
  std::vector<std::pair<Token, std::vector<Term>>> rels;
  PresentationParse out;
  const Field Q = Field::rationals();

  ts.skip_newlines();
  while (!ts.at_end()) {
    Token kw = ts.expect_ident("a statement");
    const std::string& k = kw.text;
    if (k == "field") {
      file_field = read_field(ts, kw);
    } else if (k == "r") {
      if (gens_at) ts.fail_at(kw, "r must precede gens");
      ts.expect('=');
      r = static_cast<std::uint32_t>(ts.expect_count("a vertex count", kMaxVertices));
      if (*r == 0) ts.fail_at(kw, "vertex count must be positive");
    } else if (k == "gens") {
      if (gens_at) ts.fail_at(kw, "gens declared twice");
      gens_at = kw;
      while (!ts.at_statement_end()) {
        Token at = ts.peek();
        Token name = ts.expect_ident("a generator");
        Letter l{name.text, std::nullopt};
        if (ts.accept('(')) {
          std::size_t i = ts.expect_count("a vertex", kMaxVertices);
          ts.expect(',');
          std::size_t j = ts.expect_count("a vertex", kMaxVertices);
          ts.expect(',');
          std::size_t n = ts.expect_count("an arrow number", 1000000);
          ts.expect(')');
          if (!r) ts.fail_at(at, "matrix generators need r");
          if (i == 0 || j == 0 || i > *r || j > *r) ts.fail_at(at, "vertex outside 1.." + std::to_string(*r));
          l.name += "(" + std::to_string(i) + "," + std::to_string(j) + "," + std::to_string(n) + ")";
          l.vertices = std::make_pair(static_cast<std::uint32_t>(i - 1), static_cast<std::uint32_t>(j - 1));
        } else if (r) {
          ts.fail_at(at, "generator needs (i,j,l) when r is given");
        }
        if (l.name == "e" && r) ts.fail_at(at, "e is reserved for idempotents");
        for (const auto& o : letters)
          if (o.name == l.name) ts.fail_at(at, "duplicate generator " + l.name);
        letters.push_back(std::move(l));
        ts.accept(',');
      }
    } else if (k == "rel") {
      if (!gens_at) ts.fail_at(kw, "rel before gens");
      if (!ts.at_statement_end()) rels.emplace_back(kw, ts.sum(Q));
    } else if (k == "truncate" || k == "degree") {
      out.truncate_at = kw;
      out.truncate = ts.expect_count("a degree", 64);
    } else {
      ts.fail_at(kw, "unknown statement " + k);
    }
    ts.end_statement();
    ts.skip_newlines();
  }
  if (!gens_at) ts.fail("no gens statement");

  Field f = choose_field(options, file_field);
  AlphabetPtr alpha = r ? std::make_shared<const Alphabet>(*r, letters)
                        : std::make_shared<const Alphabet>([&] {
                            std::vector<std::string> names;
                            for (const auto& l : letters) names.push_back(l.name);
                            return names;
                          }());
  Presentation& p = out.presentation;
  p.alphabet = alpha;
  p.field = f;
  p.degree_bound = out.truncate.value_or(0);
  for (const auto& [at, terms] : rels) {
    NCPoly poly = build_polynomial(terms, alpha, f);
    for (const auto& c : augment(poly))
      if (!c.is_zero()) ts.fail_at(at, "relation has a nonzero constant term");
    if (!poly.is_zero()) p.relations.push_back(std::move(poly));
  }
  return out;
}

Matrix parse_matrix(TokenStream& ts, Field f, std::size_t dim) {
  Token at = ts.peek();
  ts.expect('[');
  std::vector<std::vector<Scalar>> rows(1);
  while (!ts.accept(']')) {
    if (ts.accept(';')) {
      rows.emplace_back();
      continue;
    }
    if (ts.accept(',')) continue;
    Token e = ts.peek();
    if (rows.back().size() >= kMaxModuleDim) ts.fail("matrix row too long");
    rows.back().push_back(convert(ts.scalar(Field::rationals()), f, e));
  }
  if (rows.size() != dim) ts.fail_at(at, "expected " + std::to_string(dim) + " rows");
  Matrix m(f, dim, dim);
  for (std::size_t i = 0; i < dim; ++i) {
    if (rows[i].size() != dim) ts.fail_at(at, "expected " + std::to_string(dim) + " entries per row");
    for (std::size_t j = 0; j < dim; ++j) m.set(i, j, rows[i][j]);
  }
  return m;
}

/// Splits "x*y*e(1)" into its factors; parentheses stay with their factor.
std::vector<std::string> split_name(const std::string& name) {
  std::vector<std::string> out(1);
  int depth = 0;
  for (char c : name) {
    if (c == '(') ++depth;
    if (c == ')') --depth;
    if (c == '*' && depth == 0) {
      out.emplace_back();
    } else {
      out.back() += c;
    }
  }
  return out;
}

}  // namespace

Presentation parse_presentation(std::string_view text, const ParseOptions& options) {
  TokenStream ts(detail::tokenize(text, true));
  return presentation_statements(ts, options).presentation;
}

NCPoly parse_polynomial(std::string_view text, const AlphabetPtr& alphabet, Field field) {
  TokenStream ts(detail::tokenize(text, false));
  auto terms = ts.sum(Field::rationals());
  if (!ts.at_end()) ts.fail("unexpected '" + ts.peek().text + "'");
  return build_polynomial(terms, alphabet, field);
}

AlgebraInput parse_algebra(std::string_view text, const ParseOptions& options) {
  auto tokens = detail::tokenize(text, true);
  bool presented = false;
  for (std::size_t i = 0; i < tokens.size(); ++i)
    if (tokens[i].is_word("gens") && (i == 0 || tokens[i - 1].kind == Tok::newline)) presented = true;

  if (presented) {
    TokenStream ts(std::move(tokens));
    PresentationParse pp = presentation_statements(ts, options);
    if (!pp.truncate) ts.fail("a presented algebra needs truncate N");
    const Presentation& p = pp.presentation;
    std::size_t count = 0, layer = p.alphabet->unit_count();
    for (std::size_t d = 0; d <= *pp.truncate; ++d, layer *= std::max<std::size_t>(p.alphabet->size(), 1)) {
      count += layer;
      if (count > kMaxAlgebraDim * 8) ts.fail_at(pp.truncate_at, "truncation too large");
    }
    try {
      FormalTruncation t = quotient_basis(p, *pp.truncate);
      if (t.dimension() > kMaxAlgebraDim) ts.fail_at(pp.truncate_at, "algebra too large");
      FiniteAlgebra A = algebra_of_truncation(t);
      A.provenance = "presentation truncated at degree " + std::to_string(*pp.truncate);
      return {std::move(A), std::move(t)};
    } catch (const ParseError&) {
      throw;
    } catch (const Error& e) {
      ts.fail_at(pp.truncate_at, e.what());
    }
  }

  // Structure constants; line based, so ';' is not special here.
  TokenStream ts(detail::tokenize(text, false));
  const Field Q = Field::rationals();
  std::optional<Field> file_field;
  std::optional<std::vector<std::string>> names;
  std::optional<std::pair<Token, std::vector<Term>>> unit_terms;
  struct Mul {
    Token at;
    std::string a, b;
    std::vector<Term> value;
  };
  std::vector<Mul> muls;
  auto name_token = [&](const char* what) {
    const Token& t = ts.peek();
    if (t.kind != Tok::ident && t.kind != Tok::number) ts.fail(std::string("expected ") + what);
    return ts.next();
  };

  ts.skip_newlines();
  while (!ts.at_end()) {
    Token kw = ts.expect_ident("a statement");
    const std::string& k = kw.text;
    if (k == "field") {
      file_field = read_field(ts, kw);
    } else if (k == "basis") {
      if (names) ts.fail_at(kw, "basis declared twice");
      names.emplace();
      while (!ts.at_statement_end()) {
        Token n = name_token("a basis name");
        for (const auto& o : *names)
          if (o == n.text) ts.fail_at(n, "duplicate basis name " + n.text);
        names->push_back(n.text);
        if (names->size() > kMaxAlgebraDim) ts.fail_at(n, "algebra too large");
        ts.accept(',');
      }
    } else if (k == "unit") {
      unit_terms = std::make_pair(kw, ts.sum(Q));
    } else if (k == "mul") {
      Mul m;
      m.at = kw;
      m.a = name_token("a basis name").text;
      m.b = name_token("a basis name").text;
      ts.expect('=');
      m.value = ts.sum(Q);
      muls.push_back(std::move(m));
    } else {
      ts.fail_at(kw, "unknown statement " + k);
    }
    ts.end_statement();
    ts.skip_newlines();
  }
  const Token eof = ts.peek();
  if (!names) ts.fail_at(eof, "no basis statement");
  Field f = choose_field(options, file_field);
  std::map<std::string, std::size_t> index;
  for (std::size_t i = 0; i < names->size(); ++i) index.emplace((*names)[i], i);
  auto lookup = [&](const std::string& n, const Token& at) {
    auto it = index.find(n);
    if (it == index.end()) ts.fail_at(at, "undeclared basis element " + n);
    return it->second;
  };
  auto unit_name = index.count("1") ? std::optional<std::string>("1") : std::nullopt;
  auto vector_of = [&](const std::vector<Term>& terms) {
    SparseVector v(f);
    for (const auto& t : terms) {
      std::size_t i;
      if (t.factors.empty()) {
        if (!unit_name) ts.fail_at(t.at, "a bare number needs a basis element named 1");
        i = index.at(*unit_name);
      } else {
        if (t.factors.size() != 1 || t.factors[0].has_args || t.factors[0].power != 1)
          ts.fail_at(t.at, "expected a basis element");
        i = lookup(t.factors[0].name, t.at);
      }
      v.add(i, convert(t.coeff, f, t.at));
    }
    return v;
  };
  SparseVector unit(f);
  if (unit_terms) {
    unit = vector_of(unit_terms->second);
  } else if (unit_name) {
    unit.set(index.at(*unit_name), Scalar::one(f));
  } else {
    ts.fail_at(eof, "no unit statement");
  }
  FiniteAlgebra::Table table;
  for (const auto& m : muls) {
    auto key = std::make_pair(lookup(m.a, m.at), lookup(m.b, m.at));
    if (table.count(key)) ts.fail_at(m.at, "duplicate product " + m.a + " " + m.b);
    table.emplace(key, vector_of(m.value));
  }
  if (unit.size() == 1 && unit.begin()->second.is_one()) {
    std::size_t u = unit.leading();
    for (std::size_t i = 0; i < names->size(); ++i) {
      SparseVector e(f);
      e.set(i, Scalar::one(f));
      table.try_emplace({u, i}, e);
      table.try_emplace({i, u}, e);
    }
  }
  try {
    return {FiniteAlgebra(f, *names, std::move(table), std::move(unit)), std::nullopt};
  } catch (const Error& e) {
    ts.fail_at(eof, e.what());
  }
}

std::vector<ModuleRep> parse_modules(std::string_view text, const AlgebraInput& input) {
  const FiniteAlgebra& A = input.algebra;
  const Field f = A.field();
  TokenStream ts(detail::tokenize(text, false));
  std::vector<ModuleRep> out;
  struct Pending {
    Token at;
    ModuleRep module;
    std::map<std::string, Matrix> given;
  };
  std::optional<Pending> cur;
  bool simples = false;

  auto finish = [&]() {
    if (!cur) return;
    ModuleRep& M = cur->module;
    std::map<std::string, Matrix>& given = cur->given;
    for (std::size_t i = 0; i < A.dim(); ++i) {
      const std::string& name = A.names()[i];
      if (auto it = given.find(name); it != given.end()) {
        M.action.push_back(it->second);
        continue;
      }
      if (name == "1") {
        M.action.push_back(Matrix::identity(f, M.dim));
        continue;
      }
      auto parts = split_name(name);
      bool known = parts.size() > 1;
      for (const auto& p : parts) known = known && given.count(p);
      if (known) {
        Matrix m = Matrix::identity(f, M.dim);
        for (const auto& p : parts) m = m * given.at(p);
        M.action.push_back(std::move(m));
      } else {
        M.action.push_back(Matrix(f, M.dim, M.dim));
      }
    }
    try {
      check_module(A, M);
    } catch (const Error& e) {
      ts.fail_at(cur->at, e.what());
    }
    out.push_back(std::move(M));
    cur.reset();
  };

  ts.skip_newlines();
  while (!ts.at_end()) {
    Token kw = ts.expect_ident("a statement");
    if (kw.text == "simples") {
      if (!input.truncation) ts.fail_at(kw, "simples needs a presented algebra");
      if (cur || !out.empty()) ts.fail_at(kw, "simples excludes module statements");
      try {
        out = vertex_simples(A, *input.truncation);
      } catch (const Error& e) {
        ts.fail_at(kw, e.what());
      }
      simples = true;
    } else if (kw.text == "module") {
      if (simples) ts.fail_at(kw, "simples excludes module statements");
      finish();
      Token name = ts.expect_ident("a module name");
      Token d = ts.expect_ident("'dim'");
      if (d.text != "dim") ts.fail_at(d, "expected 'dim'");
      std::size_t dim = ts.expect_count("a dimension", kMaxModuleDim);
      if (dim == 0) ts.fail_at(kw, "modules must be nonzero");
      cur = Pending{kw, ModuleRep{name.text, dim, {}}, {}};
    } else if (kw.text == "act") {
      if (!cur) ts.fail_at(kw, "act outside a module");
      Token at = ts.peek();
      std::string name;
      if (ts.peek().kind == Tok::number) {
        name = ts.next().text;
      } else {
        std::vector<std::string> parts;
        for (const auto& fac : ts.product())
          for (std::size_t k = 0; k < fac.power; ++k) parts.push_back(detail::factor_name(fac));
        for (std::size_t k = 0; k < parts.size(); ++k) name += (k ? "*" : "") + parts[k];
      }
      if (!A.index(name)) ts.fail_at(at, "undeclared basis element " + name);
      ts.expect('=');
      Matrix m = parse_matrix(ts, f, cur->module.dim);
      if (!cur->given.emplace(name, std::move(m)).second) ts.fail_at(at, "duplicate action of " + name);
    } else {
      ts.fail_at(kw, "unknown statement " + kw.text);
    }
    ts.end_statement();
    ts.skip_newlines();
  }
  finish();
  if (out.empty()) ts.fail("no modules given");
  std::set<std::string> seen;
  for (const auto& M : out)
    if (!seen.insert(M.name).second) ts.fail("duplicate module " + M.name);
  return out;
}

RelmorphInput parse_relmorph(std::string_view text, const ParseOptions& options) {
  TokenStream ts(detail::tokenize(text, false));
  const Field Q = Field::rationals();
  std::optional<Field> file_field;
  std::optional<std::size_t> n;
  struct Row {
    Token at;
    std::vector<Scalar> entries;
    std::optional<Scalar> rhs;
  };
  std::vector<Row> rels, kappa;
  ts.skip_newlines();
  while (!ts.at_end()) {
    Token kw = ts.expect_ident("a statement");
    if (kw.text == "field") {
      file_field = read_field(ts, kw);
    } else if (kw.text == "n") {
      if (n) ts.fail_at(kw, "n declared twice");
      n = ts.expect_count("a dimension", 100000);
    } else if (kw.text == "rel" || kw.text == "kappa") {
      Row row{kw, {}, std::nullopt};
      while (!ts.at_statement_end() && !ts.peek().is('=')) {
        row.entries.push_back(ts.scalar(Q));
        if (row.entries.size() > 100000) ts.fail("row too long");
        ts.accept(',');
      }
      if (ts.accept('=')) {
        if (kw.text == "kappa") ts.fail_at(kw, "kappa rows take no constant");
        row.rhs = ts.scalar(Q);
      }
      (kw.text == "rel" ? rels : kappa).push_back(std::move(row));
    } else {
      ts.fail_at(kw, "unknown statement " + kw.text);
    }
    ts.end_statement();
    ts.skip_newlines();
  }
  if (!n) ts.fail("no n statement");
  RelmorphInput out{choose_field(options, file_field), *n, {}, std::nullopt, std::nullopt};
  const Field f = out.field;
  auto build = [&](const std::vector<Row>& rows) {
    Matrix m(f, rows.size(), *n);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (rows[i].entries.size() != *n)
        ts.fail_at(rows[i].at, "expected " + std::to_string(*n) + " entries");
      for (std::size_t j = 0; j < *n; ++j) m.set(i, j, convert(rows[i].entries[j], f, rows[i].at));
    }
    return m;
  };
  out.relations = build(rels);
  bool affine = false;
  for (const auto& r : rels) affine = affine || r.rhs.has_value();
  if (affine) {
    SparseVector rhs(f);
    for (std::size_t i = 0; i < rels.size(); ++i)
      if (rels[i].rhs) rhs.set(i, convert(*rels[i].rhs, f, rels[i].at));
    out.rhs = std::move(rhs);
  }
  if (!kappa.empty()) out.kappa = build(kappa);
  return out;
}

Ordering parse_ordering(std::string_view text, const Alphabet& alphabet) {
  std::vector<std::string> fields(1);
  for (char c : text) {
    if (c == ':') fields.emplace_back();
    else fields.back() += c;
  }
  if (fields[0] != "deglex") throw ParseError(1, 1, "unknown ordering " + fields[0]);
  bool reversed = false;
  if (fields.size() > 1 && fields.back() == "reversed") {
    reversed = true;
    fields.pop_back();
  }
  if (fields.size() > 2) throw ParseError(1, fields[0].size() + fields[1].size() + 2, "too many ordering fields");
  std::vector<std::string> names;
  if (fields.size() == 2) {
    std::string cur;
    int depth = 0;
    for (char c : fields[1]) {
      if (c == '(') ++depth;
      if (c == ')') --depth;
      if (c == ',' && depth == 0) {
        names.push_back(cur);
        cur.clear();
      } else {
        cur += c;
      }
    }
    if (!cur.empty()) names.push_back(cur);
  }
  Ordering o;
  try {
    o = Ordering::deglex(alphabet, names);
  } catch (const Error& e) {
    throw ParseError(1, 8, e.what());
  }
  o.reversed = reversed;
  return o;
}

}  // namespace gmmp
