#pragma once

#include <cmath>
#include <optional>
#include <string_view>
#include <vector>

#include "angle_unit.hpp"
#include "dual.hpp"
#include "evaluate.hpp"
#include "expr.hpp"

namespace dibbl {

/// y_t(x) = intercept + slope * x
struct TangentLine {
  double intercept;
  double slope;
};

/// Tangent line with exact rational coefficients.
struct ExactTangentLine {
  Rational intercept;
  Rational slope;
};

/// Real roots of a t^2 + b t + c, ascending.
struct QuadraticRoots {
  double discriminant;
  std::vector<double> roots;
};

/// Stationary point of p0 + p1 t + p2 t^2.
struct Vertex {
  double t_m;
  double value;
};

struct PowerRuleResult {
  Rational coefficient;
  Rational exponent;
};

struct Residual {
  double value;
  double dibbl;
};

/// Propagates `seed` through the tree. With seed (x, 1) the dibbl part of the
/// result is the slope at x.
inline Dual<double> eval_dual(const Expr &e, std::string_view var, const Dual<double> &seed,
                              AngleUnit unit = AngleUnit::radians) {
  return evaluate_dual(e, var, seed, unit);
}

/// Slope of e at x0: (y(x0 + dx) - y(x0)) / dx with dx * dx = 0.
inline double derivative_at(const Expr &e, std::string_view var, double x0,
                            AngleUnit unit = AngleUnit::radians) {
  return eval_dual(e, var, Dual<double>::variable(x0), unit).dibbl;
}

/// Exact slope when every node stays rational.
inline std::optional<Rational> derivative_at_exact(const Expr &e, std::string_view var,
                                                   const Rational &x0) {
  auto d = try_evaluate_exact(e, var, Dual<Rational>::variable(x0));
  if (!d)
    return std::nullopt;
  return d->dibbl;
}

/// Rise over run between two distinct points.
inline double secant_slope(const Expr &e, std::string_view var, double x1, double x2,
                           AngleUnit unit = AngleUnit::radians) {
  if (x1 == x2)
    throw CoincidentPointsError();
  const double y1 = eval_numeric(e, var, x1, unit);
  const double y2 = eval_numeric(e, var, x2, unit);
  return detail::checked((y2 - y1) / (x2 - x1));
}

inline TangentLine tangent_line(const Expr &e, std::string_view var, double x0,
                                AngleUnit unit = AngleUnit::radians) {
  const Dual<double> y = eval_dual(e, var, Dual<double>::variable(x0), unit);
  return {detail::checked(y.real - y.dibbl * x0), y.dibbl};
}

inline std::optional<ExactTangentLine> tangent_line_exact(const Expr &e, std::string_view var,
                                                          const Rational &x0) {
  auto y = try_evaluate_exact(e, var, Dual<Rational>::variable(x0));
  if (!y)
    return std::nullopt;
  try {
    return ExactTangentLine{y->real - y->dibbl * x0, y->dibbl};
  } catch (const RationalOverflow &) {
    return std::nullopt;
  }
}

/// d/dx (c x^n) = (c n) x^(n-1).
inline PowerRuleResult power_rule(const Rational &c, const Rational &n) {
  return {c * n, n - Rational(1)};
}

/// Roots of a t^2 + b t + c. The larger-magnitude root is computed first and
/// the other follows from c / (a t1), which avoids cancellation.
inline QuadraticRoots quadratic_roots(double a, double b, double c) {
  if (a == 0.0)
    throw NotAQuadraticError();
  const double disc = detail::checked(b * b - 4.0 * a * c);
  QuadraticRoots out{disc, {}};
  if (disc < 0.0)
    return out;
  if (disc == 0.0) {
    out.roots.push_back(-b / (2.0 * a));
    return out;
  }
  const double q = -0.5 * (b + std::copysign(std::sqrt(disc), b));
  double t1 = q / a;
  double t2 = c / q;
  if (t2 < t1)
    std::swap(t1, t2);
  out.roots = {t1, t2};
  return out;
}

inline Vertex quadratic_vertex(double p0, double p1, double p2) {
  if (p2 == 0.0)
    throw NotAQuadraticError();
  const double t = -p1 / (2.0 * p2);
  return {t, detail::checked(p0 + p1 * t + p2 * t * t)};
}

/// Secant slope of sin between 0 and `step`, read in `unit`. Tends to
/// unit_scale(unit) as step shrinks.
inline double estimate_A(AngleUnit unit, double step) {
  if (step == 0.0)
    throw StepError("estimate_A needs a nonzero step");
  return detail::checked(scalar_sin(step, unit) / step);
}

/// sin^2 + cos^2 - 1 evaluated over the dual (theta, 1). The dibbl part is
/// 2 (sin sin' + cos cos'), which the identity forces to zero.
inline Residual pythagorean_residual(double theta, AngleUnit unit = AngleUnit::radians) {
  const Dual<double> x = Dual<double>::variable(theta);
  const Dual<double> s = dual_sin(x, unit);
  const Dual<double> c = dual_cos(x, unit);
  const Dual<double> r = s * s + c * c - Dual<double>::constant(1.0);
  return {r.real, r.dibbl};
}

} // namespace dibbl
