#ifndef GMMP_SRC_LEXER_HPP
#define GMMP_SRC_LEXER_HPP

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "gmmp/error.hpp"
#include "gmmp/scalar.hpp"

namespace gmmp::detail {

enum class Tok { ident, number, symbol, newline, end };

struct Token {
  Tok kind = Tok::end;
  std::string text;
  std::size_t line = 1;
  std::size_t column = 1;

  bool is(char c) const { return kind == Tok::symbol && text.size() == 1 && text[0] == c; }
  bool is_word(std::string_view w) const { return kind == Tok::ident && text == w; }
};

/// Splits text into identifiers, unsigned integers and one-character
/// symbols. '#' starts a comment; with `semicolons` a ';' also ends a
/// statement (reported as a newline token).
std::vector<Token> tokenize(std::string_view text, bool semicolons);

/// One parsed factor of a product: name, optional (i, j, ...) and power.
struct Factor {
  Token at;
  std::string name;
  std::vector<std::size_t> args;
  bool has_args = false;
  std::size_t power = 1;
};

/// coeff * product; an empty product is a bare number.
struct Term {
  Token at;
  Scalar coeff;
  std::vector<Factor> factors;
};

class TokenStream {
public:
  explicit TokenStream(std::vector<Token> tokens) : tokens_(std::move(tokens)) {}

  const Token& peek(std::size_t ahead = 0) const;
  Token next();
  bool at_end() const { return peek().kind == Tok::end; }
  bool at_statement_end() const {
    return peek().kind == Tok::newline || peek().kind == Tok::end;
  }
  void skip_newlines();
  /// Consumes the newline (or end) closing a statement.
  void end_statement();
  bool accept(char c);
  void expect(char c);
  Token expect_ident(const char* what);
  std::size_t expect_count(const char* what, std::size_t max);
  [[noreturn]] void fail(const std::string& what) const { fail_at(peek(), what); }
  [[noreturn]] static void fail_at(const Token& t, const std::string& what) {
    throw ParseError(t.line, t.column, what);
  }

  /// number ['/' number], with an optional leading sign.
  Scalar scalar(Field f);
  /// factor ('*' factor)*.
  std::vector<Factor> product();
  /// [sign] term (sign term)*, each term `coeff`, `coeff*product` or
  /// `product`.
  std::vector<Term> sum(Field f);

private:
  Factor factor();
  Scalar unsigned_scalar(Field f);

  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
};

/// Name of a factor as the alphabet renders it ("x", "x(1,2,1)", "e(1)").
std::string factor_name(const Factor& f);

}  // namespace gmmp::detail

#endif
