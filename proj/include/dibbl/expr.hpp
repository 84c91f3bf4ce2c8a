#pragma once

#include <algorithm>
#include <charconv>
#include <cmath>
#include <memory>
#include <string>
#include <utility>
#include <variant>

#include "rational.hpp"

namespace dibbl {

/// Literal value: exact when the source text allowed it, floating otherwise.
using Number = std::variant<Rational, double>;

inline double to_double(const Number &n) {
  if (auto r = std::get_if<Rational>(&n))
    return r->to_double();
  return std::get<double>(n);
}

inline bool same_value(const Number &a, const Number &b) {
  if (a.index() == b.index())
    return a == b;
  return to_double(a) == to_double(b);
}

enum class ExprKind { constant, variable, add, sub, neg, mul, div, pow, sin, cos };

/// Immutable expression tree over a single independent variable.
///
/// Nodes are shared and never mutated, so copies are cheap and trees can be
/// used from several threads at once.
class Expr {
public:
  static Expr constant(Number value) { return Expr(Node{ExprKind::constant, std::move(value)}); }
  static Expr constant(std::int64_t value) { return constant(Number{Rational(value)}); }
  static Expr variable(std::string name) {
    Node n{ExprKind::variable};
    n.name = std::move(name);
    return Expr(std::move(n));
  }
  static Expr add(Expr l, Expr r) { return binary(ExprKind::add, std::move(l), std::move(r)); }
  static Expr sub(Expr l, Expr r) { return binary(ExprKind::sub, std::move(l), std::move(r)); }
  static Expr mul(Expr l, Expr r) { return binary(ExprKind::mul, std::move(l), std::move(r)); }
  static Expr div(Expr l, Expr r) { return binary(ExprKind::div, std::move(l), std::move(r)); }
  static Expr neg(Expr e) { return unary(ExprKind::neg, std::move(e)); }
  static Expr sin(Expr e) { return unary(ExprKind::sin, std::move(e)); }
  static Expr cos(Expr e) { return unary(ExprKind::cos, std::move(e)); }
  static Expr pow(Expr base, Rational exponent) {
    Node n{ExprKind::pow};
    n.exponent = exponent;
    n.left = std::make_shared<const Expr>(std::move(base));
    return Expr(std::move(n));
  }

  ExprKind kind() const noexcept { return node_->kind; }

  /// Valid for constants.
  const Number &value() const { return node_->value; }
  /// Valid for variables.
  const std::string &name() const { return node_->name; }
  /// Valid for pow.
  const Rational &exponent() const { return node_->exponent; }
  /// Operand of unary nodes and pow, left operand of binary nodes.
  const Expr &operand() const { return *node_->left; }
  const Expr &left() const { return *node_->left; }
  const Expr &right() const { return *node_->right; }

  bool is_binary() const noexcept {
    auto k = kind();
    return k == ExprKind::add || k == ExprKind::sub || k == ExprKind::mul || k == ExprKind::div;
  }
  bool is_unary() const noexcept {
    auto k = kind();
    return k == ExprKind::neg || k == ExprKind::sin || k == ExprKind::cos;
  }

  /// Structural equality. Constants of the same representation compare
  /// exactly; a rational equals a double when it rounds to that double.
  friend bool operator==(const Expr &a, const Expr &b) {
    if (a.node_ == b.node_)
      return true;
    if (a.kind() != b.kind())
      return false;
    switch (a.kind()) {
    case ExprKind::constant:
      return same_value(a.value(), b.value());
    case ExprKind::variable:
      return a.name() == b.name();
    case ExprKind::pow:
      return a.exponent() == b.exponent() && a.operand() == b.operand();
    default:
      break;
    }
    if (a.is_unary())
      return a.operand() == b.operand();
    return a.left() == b.left() && a.right() == b.right();
  }

  std::size_t depth() const {
    if (kind() == ExprKind::constant || kind() == ExprKind::variable)
      return 1;
    if (is_binary())
      return 1 + std::max(left().depth(), right().depth());
    return 1 + operand().depth();
  }

private:
  struct Node {
    ExprKind kind;
    Number value{};
    std::string name{};
    Rational exponent{};
    std::shared_ptr<const Expr> left{};
    std::shared_ptr<const Expr> right{};
  };

  explicit Expr(Node n) : node_(std::make_shared<const Node>(std::move(n))) {}

  static Expr unary(ExprKind k, Expr e) {
    Node n{k};
    n.left = std::make_shared<const Expr>(std::move(e));
    return Expr(std::move(n));
  }
  static Expr binary(ExprKind k, Expr l, Expr r) {
    Node n{k};
    n.left = std::make_shared<const Expr>(std::move(l));
    n.right = std::make_shared<const Expr>(std::move(r));
    return Expr(std::move(n));
  }

  std::shared_ptr<const Node> node_;
};

/// Replaces every occurrence of variable `name` by a constant.
inline Expr substitute(const Expr &e, const std::string &name, const Number &value) {
  switch (e.kind()) {
  case ExprKind::constant:
    return e;
  case ExprKind::variable:
    return e.name() == name ? Expr::constant(value) : e;
  case ExprKind::add:
    return Expr::add(substitute(e.left(), name, value), substitute(e.right(), name, value));
  case ExprKind::sub:
    return Expr::sub(substitute(e.left(), name, value), substitute(e.right(), name, value));
  case ExprKind::mul:
    return Expr::mul(substitute(e.left(), name, value), substitute(e.right(), name, value));
  case ExprKind::div:
    return Expr::div(substitute(e.left(), name, value), substitute(e.right(), name, value));
  case ExprKind::neg:
    return Expr::neg(substitute(e.operand(), name, value));
  case ExprKind::sin:
    return Expr::sin(substitute(e.operand(), name, value));
  case ExprKind::cos:
    return Expr::cos(substitute(e.operand(), name, value));
  case ExprKind::pow:
    return Expr::pow(substitute(e.operand(), name, value), e.exponent());
  }
  return e;
}

// ---------------------------------------------------------------------------
// Canonical text form. The output re-parses to a structurally identical tree.

namespace detail {

enum Precedence : int { kSum = 1, kProduct = 2, kNegation = 3, kPower = 4, kAtom = 5 };

inline std::string format_double(double v) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, end);
}

/// Bare (unparenthesized) spelling of a non-negative integer constant, or
/// of a non-negative double.
inline bool is_bare_literal(const Expr &e) {
  if (e.kind() != ExprKind::constant)
    return false;
  if (auto r = std::get_if<Rational>(&e.value()))
    return r->is_integer() && r->sign() >= 0;
  return !std::signbit(std::get<double>(e.value()));
}

inline std::string constant_text(const Number &n) {
  if (auto r = std::get_if<Rational>(&n)) {
    if (r->is_integer() && r->sign() >= 0)
      return r->str();
    return "(" + r->str() + ")";
  }
  double d = std::get<double>(n);
  if (std::signbit(d))
    return "(-" + format_double(-d) + ")";
  return format_double(d);
}

inline int precedence(const Expr &e) {
  switch (e.kind()) {
  case ExprKind::add:
  case ExprKind::sub:
    return kSum;
  case ExprKind::mul:
  case ExprKind::div:
    return kProduct;
  case ExprKind::neg:
    return kNegation;
  case ExprKind::pow:
    return kPower;
  default:
    return kAtom;
  }
}

inline std::string unparse_at(const Expr &e, int min_precedence);

inline std::string wrap(const std::string &s) { return "(" + s + ")"; }

inline std::string unparse_node(const Expr &e) {
  switch (e.kind()) {
  case ExprKind::constant:
    return constant_text(e.value());
  case ExprKind::variable:
    return e.name();
  case ExprKind::sin:
    return "sin(" + unparse_at(e.operand(), 0) + ")";
  case ExprKind::cos:
    return "cos(" + unparse_at(e.operand(), 0) + ")";
  case ExprKind::neg: {
    // "-5" inside parentheses would read back as a negative literal.
    if (is_bare_literal(e.operand()))
      return "-" + wrap(unparse_node(e.operand()));
    return "-" + unparse_at(e.operand(), kNegation);
  }
  case ExprKind::pow: {
    std::string base = unparse_at(e.operand(), kAtom);
    const Rational &p = e.exponent();
    if (p.is_integer() && p.sign() >= 0)
      return base + "^" + p.str();
    return base + "^(" + p.str() + ")";
  }
  case ExprKind::add:
    return unparse_at(e.left(), kSum) + "+" + unparse_at(e.right(), kSum + 1);
  case ExprKind::sub:
    return unparse_at(e.left(), kSum) + "-" + unparse_at(e.right(), kSum + 1);
  case ExprKind::mul:
    return unparse_at(e.left(), kProduct) + "*" + unparse_at(e.right(), kProduct + 1);
  case ExprKind::div:
    return unparse_at(e.left(), kProduct) + "/" + unparse_at(e.right(), kProduct + 1);
  }
  return {};
}

inline std::string unparse_at(const Expr &e, int min_precedence) {
  if (precedence(e) >= min_precedence)
    return unparse_node(e);
  // "(a/b)" with integer a, b is the rational literal form; keep a plain
  // quotient distinct by bracketing its numerator.
  if (e.kind() == ExprKind::div && is_bare_literal(e.left()) && is_bare_literal(e.right()))
    return wrap(wrap(unparse_node(e.left())) + "/" + unparse_node(e.right()));
  return wrap(unparse_node(e));
}

} // namespace detail

/// Canonical text: explicit `*`, minimal parentheses, rational constants as
/// "(n/d)", non-integer exponents as "^(p/q)".
inline std::string unparse(const Expr &e) { return detail::unparse_at(e, 0); }

} // namespace dibbl
