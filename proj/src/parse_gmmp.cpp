#include <algorithm>
#include <map>

#include "gmmp/parse.hpp"
#include "gmmp/word.hpp"
#include "lexer.hpp"

namespace gmmp {

using detail::Factor;
using detail::Term;
using detail::Tok;
using detail::Token;
using detail::TokenStream;

namespace {

constexpr std::size_t kMaxWords = 10000;
constexpr std::uint32_t kMaxVertices = 64;

/// A reference to a basis element: `1` or a product of symbols.
struct Ref {
  Token at;
  bool unit = false;
  std::vector<Factor> factors;
};

struct TableEntry {
  Token at;
  std::vector<Ref> args;
  std::vector<Term> value;
};

struct XEntry {
  Token at;
  std::optional<std::string> letter;
  Ref ref;
  std::optional<std::pair<std::uint32_t, std::uint32_t>> vertices;
};

Ref parse_ref(TokenStream& ts) {
  Ref r;
  r.at = ts.peek();
  if (ts.peek().kind == Tok::number && ts.peek().text == "1") {
    ts.next();
    r.unit = true;
  } else if (ts.peek().kind == Tok::ident) {
    r.factors = ts.product();
  } else {
    ts.fail("expected a basis element");
  }
  return r;
}

std::vector<std::string> name_list(TokenStream& ts, const char* what) {
  std::vector<std::string> out;
  while (!ts.at_statement_end()) {
    out.push_back(ts.expect_ident(what).text);
    ts.accept(',');
  }
  return out;
}

/// Basis lookups for either declared names or the words of an alphabet.
class Basis {
public:
  Basis(std::vector<std::string> names) : names_(std::move(names)) {
    for (std::size_t i = 0; i < names_.size(); ++i) index_.emplace(names_[i], i);
  }
  Basis(AlphabetPtr alpha, std::size_t degree) : alpha_(std::move(alpha)), degree_(degree) {
    Ordering order = Ordering::deglex(alpha_->size());
    for (std::size_t d = 0; d <= degree; ++d) {
      auto words = alpha_->words_of_degree(d);
      std::sort(words.begin(), words.end(), [&](const Word& a, const Word& b) { return order.less(a, b); });
      for (auto& w : words) {
        words_.emplace(w, names_.size());
        names_.push_back(alpha_->render(w));
        word_list_.push_back(std::move(w));
      }
    }
  }

  const std::vector<std::string>& names() const { return names_; }
  bool words() const { return alpha_ != nullptr; }
  const std::vector<Word>& word_list() const { return word_list_; }
  std::optional<std::size_t> unit_index() const {
    if (words()) return 0;
    auto it = index_.find("1");
    return it == index_.end() ? std::nullopt : std::optional<std::size_t>(it->second);
  }

  /// Index of the element, nullopt when it lies beyond the materialized
  /// degree. Throws ParseError for unknown symbols.
  std::optional<std::size_t> find(const Ref& r, const std::optional<std::size_t>& unit) const {
    if (r.unit) {
      if (words()) return 0;
      if (!unit) TokenStream::fail_at(r.at, "no unit declared for 1");
      return unit;
    }
    if (!words()) {
      const Factor& f = r.factors.front();
      if (r.factors.size() != 1 || f.has_args || f.power != 1)
        TokenStream::fail_at(r.at, "expected a declared symbol");
      auto it = index_.find(f.name);
      if (it == index_.end()) TokenStream::fail_at(f.at, "undeclared symbol " + f.name);
      return it->second;
    }
    std::vector<std::uint32_t> letters;
    for (const auto& f : r.factors) {
      auto l = alpha_->find(f.name);
      if (!l || f.has_args) TokenStream::fail_at(f.at, "undeclared symbol " + detail::factor_name(f));
      for (std::size_t k = 0; k < f.power; ++k) letters.push_back(*l);
    }
    if (letters.size() > degree_) return std::nullopt;
    return words_.at(Word{letters, 0});
  }

private:
  std::vector<std::string> names_;
  std::map<std::string, std::size_t> index_;
  AlphabetPtr alpha_;
  std::size_t degree_ = 0;
  std::map<Word, std::size_t> words_;
  std::vector<Word> word_list_;
};

SparseVector to_vector(const std::vector<Term>& terms, const Basis& basis, Field f,
                       const std::optional<std::size_t>& unit) {
  SparseVector v(f);
  for (const auto& t : terms) {
    Ref r{t.at, t.factors.empty(), t.factors};
    auto idx = basis.find(r, unit);
    if (!idx) continue;
    try {
      v.add(*idx, Scalar(f, t.coeff.rational()));
    } catch (const Error& e) {
      TokenStream::fail_at(t.at, e.what());
    }
  }
  return v;
}

}  // namespace

GmmpAlgebra parse_gmmp(std::string_view text, const ParseOptions& options) {
  TokenStream ts(detail::tokenize(text, false));
  const Field Q = Field::rationals();
  std::optional<Field> file_field;
  std::optional<std::vector<std::string>> v_names, w_names;
  bool w_is_v = false;
  std::optional<std::pair<Token, std::vector<std::size_t>>> degrees;
  std::optional<std::pair<Token, std::vector<std::string>>> letters;
  std::optional<std::size_t> degree;
  bool concatenation = false;
  std::uint32_t vertices = 0;
  std::optional<Ref> unit_ref;
  std::vector<XEntry> xs;
  std::optional<Token> x_at;
  std::vector<TableEntry> cups, ds;

  ts.skip_newlines();
  while (!ts.at_end()) {
    Token kw = ts.expect_ident("a statement");
    const std::string& k = kw.text;
    if (k == "field") {
      std::size_t p = ts.expect_count("a characteristic", 2147483647);
      try {
        file_field = p == 0 ? Field::rationals() : Field::prime(p);
      } catch (const Error& e) {
        ts.fail_at(kw, e.what());
      }
    } else if (k == "V") {
      if (v_names) ts.fail_at(kw, "V declared twice");
      v_names = name_list(ts, "a basis symbol");
    } else if (k == "W") {
      if (w_names || w_is_v) ts.fail_at(kw, "W declared twice");
      if (ts.accept('=')) {
        Token v = ts.expect_ident("V");
        if (v.text != "V") ts.fail_at(v, "expected V");
        w_is_v = true;
      } else {
        w_names = name_list(ts, "a basis symbol");
      }
    } else if (k == "degrees") {
      std::vector<std::size_t> ds_;
      while (!ts.at_statement_end()) {
        ds_.push_back(ts.expect_count("a degree", 1000000));
        ts.accept(',');
      }
      degrees = std::make_pair(kw, std::move(ds_));
    } else if (k == "basis") {
      Token w = ts.expect_ident("'words'");
      if (w.text != "words") ts.fail_at(w, "expected 'words'");
      letters = std::make_pair(w, name_list(ts, "a letter"));
      if (letters->second.empty()) ts.fail_at(w, "no letters given");
    } else if (k == "degree") {
      degree = ts.expect_count("a degree", 64);
    } else if (k == "vertices") {
      vertices = static_cast<std::uint32_t>(ts.expect_count("a vertex count", kMaxVertices));
      if (vertices == 0) ts.fail_at(kw, "vertex count must be positive");
    } else if (k == "unit") {
      unit_ref = parse_ref(ts);
    } else if (k == "X") {
      if (x_at) ts.fail_at(kw, "X declared twice");
      x_at = kw;
      while (!ts.at_statement_end()) {
        XEntry x;
        x.at = ts.peek();
        if (ts.peek().kind == Tok::ident && ts.peek(1).is('=')) {
          x.letter = ts.next().text;
          ts.next();
        }
        x.ref = parse_ref(ts);
        if (ts.accept('@')) {
          auto s = ts.expect_count("a vertex", kMaxVertices);
          ts.expect(',');
          auto t = ts.expect_count("a vertex", kMaxVertices);
          if (s == 0 || t == 0) ts.fail_at(x.at, "vertices are numbered from 1");
          x.vertices = std::make_pair(static_cast<std::uint32_t>(s - 1), static_cast<std::uint32_t>(t - 1));
        }
        xs.push_back(std::move(x));
        ts.accept(',');
      }
    } else if (k == "cup" && ts.peek().is_word("concatenation") && ts.peek(1).kind != Tok::ident &&
               ts.peek(1).kind != Tok::number) {
      ts.next();
      concatenation = true;
    } else if (k == "cup" || k == "d") {
      TableEntry e;
      e.at = kw;
      e.args.push_back(parse_ref(ts));
      if (k == "cup") e.args.push_back(parse_ref(ts));
      ts.expect('=');
      e.value = ts.sum(Q);
      (k == "cup" ? cups : ds).push_back(std::move(e));
    } else {
      ts.fail_at(kw, "unknown statement " + k);
    }
    ts.end_statement();
    ts.skip_newlines();
  }
  const Token eof = ts.peek();

  Field f = options.force_field || !file_field ? options.field : *file_field;
  std::optional<Basis> V, W;
  std::optional<std::size_t> materialized;
  if (letters) {
    if (v_names || w_names || w_is_v) ts.fail_at(letters->first, "basis words excludes V and W declarations");
    if (vertices) ts.fail_at(letters->first, "basis words is ungraded");
    std::shared_ptr<Alphabet> alpha;
    try {
      alpha = std::make_shared<Alphabet>(letters->second);
    } catch (const Error& e) {
      ts.fail_at(letters->first, e.what());
    }
    std::size_t D = std::max(options.degree, degree.value_or(0));
    std::size_t count = 0, layer = 1;
    for (std::size_t d = 0; d <= D; ++d, layer *= alpha->size()) {
      count += layer;
      if (count > kMaxWords) ts.fail_at(letters->first, "too many words to materialize");
    }
    V.emplace(alpha, D);
    W.emplace(alpha, D);
    materialized = D;
  } else {
    if (concatenation) ts.fail(std::string("cup concatenation needs basis words"));
    if (!v_names) ts.fail_at(eof, "V is not declared");
    if (!w_names && !w_is_v) ts.fail_at(eof, "W is not declared");
    V.emplace(*v_names);
    W.emplace(w_is_v ? *v_names : *w_names);
  }

  std::optional<std::size_t> w_unit;
  if (unit_ref) {
    if (!letters && !w_is_v) ts.fail_at(unit_ref->at, "a cup unit needs W = V");
    w_unit = W->find(*unit_ref, std::nullopt);
  } else if (letters) {
    w_unit = 0;
  }

  try {
    GmmpAlgebra L(f, V->names(), W->names());
    if (letters) {
      std::vector<std::size_t> lengths;
      for (const auto& w : V->word_list()) lengths.push_back(w.degree());
      L.set_v_degrees(std::move(lengths));
    } else if (degrees) {
      if (degrees->second.size() != L.dim_v())
        ts.fail_at(degrees->first, "one degree per V basis element expected");
      L.set_v_degrees(degrees->second);
    }
    if (concatenation) {
      const auto& words = V->word_list();
      for (std::size_t i = 0; i < words.size(); ++i)
        for (std::size_t j = 0; j < words.size(); ++j) {
          if (words[i].degree() + words[j].degree() > *materialized) break;
          Word w = words[i];
          w.letters.insert(w.letters.end(), words[j].letters.begin(), words[j].letters.end());
          SparseVector v(f);
          auto pos = std::lower_bound(words.begin(), words.end(), w, [&](const Word& a, const Word& b) {
            return a.degree() != b.degree() ? a.degree() < b.degree() : a.letters < b.letters;
          });
          v.set(static_cast<std::size_t>(pos - words.begin()), Scalar::one(f));
          L.set_cup(i, j, std::move(v));
        }
    }
    std::map<std::pair<std::size_t, std::size_t>, Token> seen_cup;
    for (const auto& e : cups) {
      auto a = V->find(e.args[0], w_unit);
      auto b = V->find(e.args[1], w_unit);
      if (!a || !b) continue;
      if (!seen_cup.emplace(std::make_pair(*a, *b), e.at).second) ts.fail_at(e.at, "duplicate cup entry");
      L.set_cup(*a, *b, to_vector(e.value, *W, f, w_unit));
    }
    std::map<std::size_t, Token> seen_d;
    for (const auto& e : ds) {
      auto a = V->find(e.args[0], w_unit);
      if (!a) continue;
      if (!seen_d.emplace(*a, e.at).second) ts.fail_at(e.at, "duplicate d entry");
      L.set_d(*a, to_vector(e.value, *W, f, w_unit));
    }
    std::vector<GmmpGenerator> gens;
    for (const auto& x : xs) {
      auto idx = V->find(x.ref, w_unit);
      if (!idx) ts.fail_at(x.at, "generator beyond the materialized degree");
      std::string letter;
      if (x.letter) {
        letter = *x.letter;
      } else if (!x.ref.unit && x.ref.factors.size() == 1 && x.ref.factors[0].power == 1) {
        letter = V->names()[*idx];
      } else {
        ts.fail_at(x.at, "name this generator with letter=element");
      }
      if (bool(x.vertices) != (vertices != 0))
        ts.fail_at(x.at, vertices ? "generator needs @source,target" : "vertices are not declared");
      if (x.vertices && (x.vertices->first >= vertices || x.vertices->second >= vertices))
        ts.fail_at(x.at, "vertex outside 1.." + std::to_string(vertices));
      gens.push_back({*idx, letter, x.vertices});
    }
    try {
      L.set_generators(std::move(gens), vertices);
    } catch (const Error& e) {
      ts.fail_at(x_at.value_or(eof), e.what());
    }
    L.set_identified(letters || w_is_v);
    L.set_cup_unit(w_unit);
    if (letters) L.set_lazy(true, *materialized);
    return L;
  } catch (const ParseError&) {
    throw;
  } catch (const Error& e) {
    ts.fail_at(eof, e.what());
  }
}

}  // namespace gmmp
