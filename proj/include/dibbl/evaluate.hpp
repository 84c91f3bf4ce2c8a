#pragma once

#include <optional>
#include <string_view>

#include "angle_unit.hpp"
#include "dual.hpp"
#include "error.hpp"
#include "expr.hpp"

namespace dibbl {

namespace detail {

// Per-value-type primitives. The double overloads use the same formulas and
// the same rounding as the real part of the Dual<double> overloads, so plain
// evaluation and dual evaluation agree bit for bit on the value.

inline double lift(const Number &n, double) { return to_double(n); }
inline Dual<double> lift(const Number &n, const Dual<double> &) {
  return Dual<double>::constant(to_double(n));
}
inline Dual<Rational> lift(const Number &n, const Dual<Rational> &) {
  if (auto r = std::get_if<Rational>(&n))
    return Dual<Rational>::constant(*r);
  throw InexactError();
}

inline double op_add(double a, double b) { return checked(a + b); }
inline double op_sub(double a, double b) { return checked(a - b); }
inline double op_mul(double a, double b) { return checked(a * b); }
inline double op_div(double a, double b) {
  if (b == 0.0)
    throw DivisionByZeroError();
  return checked(a / b);
}
inline double op_neg(double a) { return -a; }
inline double op_pow(double a, const Rational &p) { return scalar_pow(a, p); }
inline double op_sin(double a, AngleUnit u) { return scalar_sin(a, u); }
inline double op_cos(double a, AngleUnit u) { return scalar_cos(a, u); }

template <typename S> Dual<S> op_add(const Dual<S> &a, const Dual<S> &b) { return dual_add(a, b); }
template <typename S> Dual<S> op_sub(const Dual<S> &a, const Dual<S> &b) { return dual_sub(a, b); }
template <typename S> Dual<S> op_mul(const Dual<S> &a, const Dual<S> &b) { return dual_mul(a, b); }
template <typename S> Dual<S> op_div(const Dual<S> &a, const Dual<S> &b) { return dual_div(a, b); }
template <typename S> Dual<S> op_neg(const Dual<S> &a) { return dual_neg(a); }
template <typename S> Dual<S> op_pow(const Dual<S> &a, const Rational &p) { return dual_pow(a, p); }
template <typename S> Dual<S> op_sin(const Dual<S> &a, AngleUnit u) { return dual_sin(a, u); }
template <typename S> Dual<S> op_cos(const Dual<S> &a, AngleUnit u) { return dual_cos(a, u); }

template <typename Value>
Value evaluate(const Expr &e, std::string_view var, const Value &x, AngleUnit unit) {
  switch (e.kind()) {
  case ExprKind::constant:
    return lift(e.value(), x);
  case ExprKind::variable:
    if (e.name() != var)
      throw UnboundVariableError(e.name());
    return x;
  case ExprKind::add:
    return op_add(evaluate(e.left(), var, x, unit), evaluate(e.right(), var, x, unit));
  case ExprKind::sub:
    return op_sub(evaluate(e.left(), var, x, unit), evaluate(e.right(), var, x, unit));
  case ExprKind::mul:
    return op_mul(evaluate(e.left(), var, x, unit), evaluate(e.right(), var, x, unit));
  case ExprKind::div:
    return op_div(evaluate(e.left(), var, x, unit), evaluate(e.right(), var, x, unit));
  case ExprKind::neg:
    return op_neg(evaluate(e.operand(), var, x, unit));
  case ExprKind::pow:
    return op_pow(evaluate(e.operand(), var, x, unit), e.exponent());
  case ExprKind::sin:
    return op_sin(evaluate(e.operand(), var, x, unit), unit);
  case ExprKind::cos:
    return op_cos(evaluate(e.operand(), var, x, unit), unit);
  }
  throw Error("corrupt expression node");
}

} // namespace detail

/// Plain real evaluation of `e` at var = x, with trigonometric arguments read
/// in `unit`.
inline double eval_numeric(const Expr &e, std::string_view var, double x,
                           AngleUnit unit = AngleUnit::radians) {
  return detail::evaluate(e, var, x, unit);
}

/// Dual evaluation over either scalar type.
template <typename Scalar>
Dual<Scalar> evaluate_dual(const Expr &e, std::string_view var, const Dual<Scalar> &seed,
                           AngleUnit unit = AngleUnit::radians) {
  return detail::evaluate(e, var, seed, unit);
}

/// Exact rational dual evaluation. Empty when some node leaves the rationals
/// (trigonometry, an irrational power, a floating literal, or 64-bit
/// overflow). Domain and division errors still propagate.
inline std::optional<Dual<Rational>> try_evaluate_exact(const Expr &e, std::string_view var,
                                                        const Dual<Rational> &seed) {
  try {
    return detail::evaluate(e, var, seed, AngleUnit::radians);
  } catch (const InexactError &) {
    return std::nullopt;
  } catch (const RationalOverflow &) {
    return std::nullopt;
  }
}

} // namespace dibbl
