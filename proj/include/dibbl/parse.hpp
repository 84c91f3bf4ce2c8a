#pragma once

#include <charconv>
#include <cmath>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "error.hpp"
#include "expr.hpp"
#include "rational.hpp"

namespace dibbl {

// Grammar (whitespace between tokens is ignored):
//
//   input     = sum END
//   sum       = product { ("+" | "-") product }
//   product   = unary { ("*" | "/") unary | literal-juxtaposed-power }
//   unary     = "-" unary | power
//   power     = primary [ "^" exponent ]
//   exponent  = ratlit [ "^" exponent ]              (folded; must stay rational)
//   ratlit    = ["-"] NUMBER | "(" ["-"] NUMBER [ "/" NUMBER ] ")"
//   primary   = NUMBER | "(" ["-"] INT "/" INT ")" | "(" ["-"] NUMBER ")"
//             | "(" sum ")" | ("sin" | "cos") "(" sum ")" | IDENT
//
// A numeric literal immediately followed by an identifier multiplies it:
// "5x^17" reads as 5*(x^17).

namespace detail {

enum class TokenType { number, ident, plus, minus, star, slash, caret, lparen, rparen, end };

struct Token {
  TokenType type;
  std::string_view text;
  std::size_t pos;
};

inline bool is_digit(char c) { return c >= '0' && c <= '9'; }
inline bool is_ident_start(char c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_';
}
inline bool is_ident_char(char c) { return is_ident_start(c) || is_digit(c); }

inline std::vector<Token> tokenize(std::string_view s) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < s.size()) {
    char c = s[i];
    if (c == ' ' || c == '\t' || c == '\n' || c == '\r') {
      ++i;
      continue;
    }
    const std::size_t start = i;
    if (is_digit(c) || (c == '.' && i + 1 < s.size() && is_digit(s[i + 1]))) {
      while (i < s.size() && is_digit(s[i]))
        ++i;
      if (i < s.size() && s[i] == '.') {
        ++i;
        while (i < s.size() && is_digit(s[i]))
          ++i;
      }
      if (i < s.size() && (s[i] == 'e' || s[i] == 'E')) {
        std::size_t j = i + 1;
        if (j < s.size() && (s[j] == '+' || s[j] == '-'))
          ++j;
        if (j < s.size() && is_digit(s[j])) {
          i = j;
          while (i < s.size() && is_digit(s[i]))
            ++i;
        }
      }
      out.push_back({TokenType::number, s.substr(start, i - start), start});
      continue;
    }
    if (is_ident_start(c)) {
      while (i < s.size() && is_ident_char(s[i]))
        ++i;
      out.push_back({TokenType::ident, s.substr(start, i - start), start});
      continue;
    }
    TokenType t;
    switch (c) {
    case '+': t = TokenType::plus; break;
    case '-': t = TokenType::minus; break;
    case '*': t = TokenType::star; break;
    case '/': t = TokenType::slash; break;
    case '^': t = TokenType::caret; break;
    case '(': t = TokenType::lparen; break;
    case ')': t = TokenType::rparen; break;
    default:
      throw ParseError(start, "unknown token '" + std::string(1, c) + "'");
    }
    out.push_back({t, s.substr(i, 1), i});
    ++i;
  }
  out.push_back({TokenType::end, {}, s.size()});
  return out;
}

inline bool is_integer_text(std::string_view t) {
  for (char c : t)
    if (!is_digit(c))
      return false;
  return !t.empty();
}

class Parser {
public:
  explicit Parser(std::string_view text) : text_(text), tokens_(tokenize(text)) {}

  Expr parse() {
    if (peek().type == TokenType::end)
      throw ParseError(0, "empty expression");
    Expr e = sum();
    if (peek().type == TokenType::rparen)
      throw ParseError(peek().pos, "unbalanced parenthesis: unexpected ')'");
    if (peek().type != TokenType::end)
      throw ParseError(peek().pos, "unexpected '" + std::string(peek().text) + "'");
    return e;
  }

private:
  const Token &peek(std::size_t ahead = 0) const {
    std::size_t i = std::min(index_ + ahead, tokens_.size() - 1);
    return tokens_[i];
  }
  const Token &advance() { return tokens_[index_ < tokens_.size() - 1 ? index_++ : index_]; }
  bool accept(TokenType t) {
    if (peek().type != t)
      return false;
    advance();
    return true;
  }
  void expect_rparen(std::size_t open_pos) {
    if (peek().type == TokenType::rparen) {
      advance();
      return;
    }
    if (peek().type == TokenType::end)
      throw ParseError(text_.size(),
                       "unbalanced parenthesis: '(' at " + std::to_string(open_pos) + " is never closed");
    throw ParseError(peek().pos, "expected ')' but found '" + std::string(peek().text) + "'");
  }

  std::size_t end_of(const Token &t) const { return t.pos + t.text.size(); }

  Expr sum() {
    Expr lhs = product();
    for (;;) {
      if (accept(TokenType::plus))
        lhs = Expr::add(lhs, product());
      else if (accept(TokenType::minus))
        lhs = Expr::sub(lhs, product());
      else
        return lhs;
    }
  }

  Expr product() {
    Expr lhs = unary();
    for (;;) {
      if (accept(TokenType::star)) {
        lhs = Expr::mul(lhs, unary());
      } else if (accept(TokenType::slash)) {
        lhs = Expr::div(lhs, unary());
      } else if (last_was_literal_ && peek().type == TokenType::ident &&
                 peek().pos == last_end_) {
        lhs = Expr::mul(lhs, unary());
      } else {
        return lhs;
      }
    }
  }

  Expr unary() {
    if (accept(TokenType::minus)) {
      Expr operand = unary();
      last_was_literal_ = false;
      return Expr::neg(operand);
    }
    return power();
  }

  Expr power() {
    Expr base = primary();
    if (peek().type == TokenType::caret) {
      advance();
      Rational p = exponent();
      last_was_literal_ = false;
      return Expr::pow(base, p);
    }
    return base;
  }

  Rational exponent() {
    const std::size_t pos = peek().pos;
    auto lit = try_rational_literal(/*allow_bare=*/true);
    if (!lit) {
      if (peek().type == TokenType::ident)
        throw ParseError(peek().pos, "variable exponent '" + std::string(peek().text) +
                                         "': exponents must be rational literals");
      if (peek().type == TokenType::end)
        throw ParseError(text_.size(), "missing exponent");
      throw ParseError(peek().pos, "exponent must be a rational literal such as 2 or (5/3)");
    }
    auto value = std::get_if<Rational>(&*lit);
    if (!value)
      throw ParseError(pos, "exponent is not an exact rational");
    if (peek().type == TokenType::caret) {
      advance();
      const std::size_t inner_pos = peek().pos;
      Rational inner = exponent();
      if (!inner.is_integer())
        throw ParseError(inner_pos, "stacked exponent makes the power irrational");
      try {
        return pow(*value, inner.num());
      } catch (const Error &) {
        throw ParseError(inner_pos, "stacked exponent out of range");
      }
    }
    return *value;
  }

  Number number_value(const Token &t) const {
    if (auto r = Rational::from_decimal(t.text))
      return *r;
    double d = 0.0;
    auto [ptr, ec] = std::from_chars(t.text.data(), t.text.data() + t.text.size(), d);
    if (ec != std::errc() || !std::isfinite(d))
      throw ParseError(t.pos, "number out of range '" + std::string(t.text) + "'");
    return d;
  }

  static Number negate(const Number &n) {
    if (auto r = std::get_if<Rational>(&n))
      return -*r;
    return -std::get<double>(n);
  }

  /// Matches a parenthesized literal "(-n)", "(n/d)" or, when allow_bare,
  /// a bare "[-]n". Consumes tokens only on success.
  std::optional<Number> try_rational_literal(bool allow_bare) {
    std::size_t k = 0;
    const bool paren = peek().type == TokenType::lparen;
    if (paren)
      ++k;
    else if (!allow_bare)
      return std::nullopt;
    bool negative = false;
    if (peek(k).type == TokenType::minus) {
      negative = true;
      ++k;
    }
    if (peek(k).type != TokenType::number)
      return std::nullopt;
    const Token &num_tok = peek(k++);
    Number value = number_value(num_tok);
    if (paren) {
      if (peek(k).type == TokenType::slash && peek(k + 1).type == TokenType::number &&
          peek(k + 2).type == TokenType::rparen) {
        const Token &den_tok = peek(k + 1);
        if (!is_integer_text(num_tok.text) || !is_integer_text(den_tok.text))
          return std::nullopt;
        auto n = Rational::from_decimal(num_tok.text);
        auto d = Rational::from_decimal(den_tok.text);
        if (!n || !d)
          throw ParseError(num_tok.pos, "rational literal out of range");
        if (d->is_zero())
          throw ParseError(den_tok.pos, "zero denominator in rational literal");
        value = *n / *d;
        k += 2;
      }
      if (peek(k).type != TokenType::rparen)
        return std::nullopt;
      ++k;
    }
    index_ += k;
    last_end_ = end_of(tokens_[index_ - 1]);
    return negative ? negate(value) : value;
  }

  Expr primary() {
    last_was_literal_ = false;
    const Token &t = peek();
    switch (t.type) {
    case TokenType::number: {
      advance();
      last_was_literal_ = true;
      last_end_ = end_of(t);
      return Expr::constant(number_value(t));
    }
    case TokenType::lparen: {
      if (auto lit = try_rational_literal(/*allow_bare=*/false)) {
        last_was_literal_ = true;
        return Expr::constant(*lit);
      }
      const std::size_t open = t.pos;
      advance();
      if (peek().type == TokenType::rparen)
        throw ParseError(peek().pos, "empty parentheses");
      Expr inner = sum();
      expect_rparen(open);
      last_was_literal_ = false;
      return inner;
    }
    case TokenType::ident: {
      advance();
      if (t.text == "sin" || t.text == "cos") {
        if (peek().type != TokenType::lparen)
          throw ParseError(peek().pos, std::string(t.text) + " requires a parenthesized argument");
        const std::size_t open = peek().pos;
        advance();
        if (peek().type == TokenType::rparen)
          throw ParseError(peek().pos, "empty argument to " + std::string(t.text));
        Expr arg = sum();
        expect_rparen(open);
        last_was_literal_ = false;
        return t.text == "sin" ? Expr::sin(arg) : Expr::cos(arg);
      }
      return Expr::variable(std::string(t.text));
    }
    case TokenType::end:
      throw ParseError(text_.size(), "unexpected end of input");
    case TokenType::rparen:
      throw ParseError(t.pos, "unbalanced parenthesis: unexpected ')'");
    default:
      throw ParseError(t.pos, "unexpected '" + std::string(t.text) + "'");
    }
  }

  std::string_view text_;
  std::vector<Token> tokens_;
  std::size_t index_ = 0;
  bool last_was_literal_ = false;
  std::size_t last_end_ = 0;
};

} // namespace detail

/// Parses one expression. Throws ParseError with the offending offset.
inline Expr parse(std::string_view text) { return detail::Parser(text).parse(); }

} // namespace dibbl
