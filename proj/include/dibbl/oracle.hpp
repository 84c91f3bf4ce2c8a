#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <string_view>

#include "angle_unit.hpp"
#include "error.hpp"
#include "evaluate.hpp"
#include "expr.hpp"
#include "slope_engine.hpp"

// Finite-difference and enumeration oracles. Nothing here touches dual
// arithmetic except convergence_order, which needs a reference slope.

namespace dibbl {

enum class DiffScheme { forward, central };

struct DiffEstimate {
  double value;
  double step;
  DiffScheme scheme;
};

inline DiffEstimate central_difference(const Expr &e, std::string_view var, double x0, double h,
                                       AngleUnit unit = AngleUnit::radians) {
  if (!(h > 0.0))
    throw StepError("finite-difference step must be positive");
  const double up = eval_numeric(e, var, x0 + h, unit);
  const double down = eval_numeric(e, var, x0 - h, unit);
  return {(up - down) / (2.0 * h), h, DiffScheme::central};
}

inline DiffEstimate forward_difference(const Expr &e, std::string_view var, double x0, double h,
                                       AngleUnit unit = AngleUnit::radians) {
  if (!(h > 0.0))
    throw StepError("finite-difference step must be positive");
  const double up = eval_numeric(e, var, x0 + h, unit);
  const double here = eval_numeric(e, var, x0, unit);
  return {(up - here) / h, h, DiffScheme::forward};
}

/// Observed order p of the central scheme from errors at h0 and h0 / 2.
/// `exact_agreement` is set (and `order` is NaN) when either error is at the
/// round-off floor, e.g. for quadratics where the scheme has no truncation
/// error.
struct ConvergenceOrder {
  double order;
  bool exact_agreement;
  double error_coarse;
  double error_fine;
};

inline ConvergenceOrder convergence_order(const Expr &e, std::string_view var, double x0,
                                          double h0, AngleUnit unit = AngleUnit::radians) {
  if (!(h0 > 0.0))
    throw StepError("initial step must be positive");
  const double reference = derivative_at(e, var, x0, unit);
  const double fx = eval_numeric(e, var, x0, unit);
  const double coarse = std::abs(central_difference(e, var, x0, h0, unit).value - reference);
  const double fine = std::abs(central_difference(e, var, x0, h0 / 2.0, unit).value - reference);
  // Rounding in f(x0 +- h) is amplified by 1/h.
  const double eps = std::numeric_limits<double>::epsilon();
  const double floor =
      64.0 * eps * std::max({1.0, std::abs(fx), std::abs(reference)}) / (h0 / 2.0);
  if (fine <= floor || coarse <= floor)
    return {std::numeric_limits<double>::quiet_NaN(), true, coarse, fine};
  return {std::log2(coarse / fine), false, coarse, fine};
}

/// x^power with an integer coefficient.
struct Monomial {
  std::uint64_t coefficient;
  int power;
};

struct BinomialResult {
  Monomial constant_term; // coefficient of dx^0
  Monomial dibbl_term;    // coefficient of dx^1
  std::uint64_t dropped_order;
};

/// Multiplies out (x + dx)^n literally, one choice per factor, and drops every
/// monomial that picks dx from two or more factors.
inline BinomialResult binomial_expand_mod_dibbl(int n) {
  if (n < 1 || n > 20)
    throw RangeError("binomial expansion supports 1 <= n <= 20");
  BinomialResult out{{0, n}, {0, n - 1}, 0};
  const std::uint32_t terms = 1u << n;
  for (std::uint32_t choice = 0; choice < terms; ++choice) {
    // bit i set: factor i contributes dx, otherwise x
    int dibbls = 0;
    for (int i = 0; i < n; ++i)
      dibbls += (choice >> i) & 1u;
    if (dibbls == 0)
      ++out.constant_term.coefficient;
    else if (dibbls == 1)
      ++out.dibbl_term.coefficient;
    else
      ++out.dropped_order;
  }
  return out;
}

} // namespace dibbl
