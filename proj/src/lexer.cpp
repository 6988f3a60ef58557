#include "lexer.hpp"

#include <cctype>

namespace gmmp::detail {

namespace {

constexpr std::string_view kSymbols = "*+-()^,;=[]/:@";
constexpr std::size_t kMaxDigits = 4096;

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

}  // namespace

std::vector<Token> tokenize(std::string_view text, bool semicolons) {
  std::vector<Token> out;
  std::size_t line = 1, col = 1, i = 0;
  auto push = [&](Tok k, std::string s, std::size_t c) { out.push_back({k, std::move(s), line, c}); };
  while (i < text.size()) {
    char c = text[i];
    if (c == '\n') {
      push(Tok::newline, "\n", col);
      ++line;
      col = 1;
      ++i;
    } else if (c == ' ' || c == '\t' || c == '\r') {
      ++i;
      ++col;
    } else if (c == '#') {
      while (i < text.size() && text[i] != '\n') ++i, ++col;
    } else if (ident_start(c)) {
      std::size_t start = i, c0 = col;
      while (i < text.size() && ident_char(text[i])) ++i, ++col;
      push(Tok::ident, std::string(text.substr(start, i - start)), c0);
    } else if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t start = i, c0 = col;
      while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i, ++col;
      if (i - start > kMaxDigits) throw ParseError(line, c0, "number too long");
      if (i < text.size() && ident_start(text[i]))
        throw ParseError(line, col, "identifier may not start with a digit");
      push(Tok::number, std::string(text.substr(start, i - start)), c0);
    } else if (c == ';' && semicolons) {
      push(Tok::newline, ";", col);
      ++i;
      ++col;
    } else if (kSymbols.find(c) != std::string_view::npos) {
      push(Tok::symbol, std::string(1, c), col);
      ++i;
      ++col;
    } else {
      std::string shown = std::isprint(static_cast<unsigned char>(c))
                              ? std::string("'") + c + "'"
                              : "byte " + std::to_string(static_cast<unsigned char>(c));
      throw ParseError(line, col, "unexpected character " + shown);
    }
  }
  push(Tok::end, "", col);
  return out;
}

const Token& TokenStream::peek(std::size_t ahead) const {
  std::size_t p = pos_ + ahead;
  return p < tokens_.size() ? tokens_[p] : tokens_.back();
}

Token TokenStream::next() {
  Token t = peek();
  if (pos_ < tokens_.size() - 1) ++pos_;
  return t;
}

void TokenStream::skip_newlines() {
  while (peek().kind == Tok::newline) next();
}

void TokenStream::end_statement() {
  if (!at_statement_end()) fail("unexpected '" + peek().text + "'");
  next();
}

bool TokenStream::accept(char c) {
  if (!peek().is(c)) return false;
  next();
  return true;
}

void TokenStream::expect(char c) {
  if (!accept(c)) {
    const Token& t = peek();
    fail(std::string("expected '") + c + "' but found " +
         (t.kind == Tok::newline ? "end of statement"
                                 : t.kind == Tok::end ? "end of input" : "'" + t.text + "'"));
  }
}

Token TokenStream::expect_ident(const char* what) {
  if (peek().kind != Tok::ident) fail(std::string("expected ") + what);
  return next();
}

std::size_t TokenStream::expect_count(const char* what, std::size_t max) {
  const Token& t = peek();
  if (t.kind != Tok::number) fail(std::string("expected ") + what);
  if (t.text.size() > 9 || std::stoul(t.text) > max)
    fail(std::string(what) + " exceeds " + std::to_string(max));
  return std::stoul(next().text);
}

Scalar TokenStream::unsigned_scalar(Field f) {
  Token num = peek();
  if (num.kind != Tok::number) fail("expected a number");
  next();
  mpq_class q(mpz_class(num.text, 10));
  if (accept('/')) {
    Token den = peek();
    if (den.kind != Tok::number) fail("expected a denominator");
    next();
    mpz_class d(den.text, 10);
    if (d == 0) fail_at(den, "zero denominator");
    q /= mpq_class(d);
  }
  try {
    return Scalar(f, q);
  } catch (const Error& e) {
    fail_at(num, e.what());
  }
}

Scalar TokenStream::scalar(Field f) {
  bool neg = false;
  if (accept('-')) neg = true;
  else accept('+');
  Scalar s = unsigned_scalar(f);
  return neg ? -s : s;
}

Factor TokenStream::factor() {
  Factor out;
  out.at = peek();
  out.name = expect_ident("a symbol").text;
  if (accept('(')) {
    out.has_args = true;
    do out.args.push_back(expect_count("an index", 1000000));
    while (accept(','));
    expect(')');
  }
  if (accept('^')) {
    out.power = expect_count("an exponent", 64);
    if (out.power == 0) fail_at(out.at, "zero exponent");
  }
  return out;
}

std::vector<Factor> TokenStream::product() {
  std::vector<Factor> out{factor()};
  while (accept('*')) out.push_back(factor());
  return out;
}

std::vector<Term> TokenStream::sum(Field f) {
  std::vector<Term> out;
  bool first = true;
  while (true) {
    Term t;
    t.at = peek();
    bool neg = false;
    if (peek().is('-') || peek().is('+')) {
      neg = next().is('-');
    } else if (!first) {
      break;
    }
    t.at = peek();
    if (peek().kind == Tok::number) {
      t.coeff = unsigned_scalar(f);
      if (accept('*')) t.factors = product();
    } else if (peek().kind == Tok::ident) {
      t.coeff = Scalar::one(f);
      t.factors = product();
    } else {
      fail("expected a term");
    }
    if (neg) t.coeff = -t.coeff;
    out.push_back(std::move(t));
    first = false;
  }
  return out;
}

std::string factor_name(const Factor& f) {
  std::string s = f.name;
  if (f.has_args) {
    s += "(";
    for (std::size_t i = 0; i < f.args.size(); ++i) s += (i ? "," : "") + std::to_string(f.args[i]);
    s += ")";
  }
  return s;
}

}  // namespace gmmp::detail
