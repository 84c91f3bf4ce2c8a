#pragma once

#include <algorithm>
#include <cmath>
#include <random>

#include "dibbl/expr.hpp"

namespace dibbl::test_support {

inline bool rel_close(double a, double b, double rel, double floor = 1.0) {
  return std::abs(a - b) <= rel * std::max({floor, std::abs(a), std::abs(b)});
}

/// Random trees over one variable for property tests. Constants are small
/// rationals so that exact and floating paths both stay in range.
class ExprGenerator {
public:
  explicit ExprGenerator(std::uint32_t seed, std::string var = "x")
      : rng_(seed), var_(std::move(var)) {}

  Expr tree(int max_depth) {
    if (max_depth <= 1 || coin(0.25))
      return leaf();
    switch (pick(0, 8)) {
    case 0: return Expr::add(tree(max_depth - 1), tree(max_depth - 1));
    case 1: return Expr::sub(tree(max_depth - 1), tree(max_depth - 1));
    case 2: return Expr::mul(tree(max_depth - 1), tree(max_depth - 1));
    case 3: return Expr::div(tree(max_depth - 1), tree(max_depth - 1));
    case 4: return Expr::neg(tree(max_depth - 1));
    case 5: return Expr::pow(tree(max_depth - 1), exponent());
    case 6: return Expr::sin(tree(max_depth - 1));
    case 7: return Expr::cos(tree(max_depth - 1));
    default: return leaf();
    }
  }

  /// Trees that are smooth and defined everywhere: no division, integer
  /// powers from 1 to 3 only (0^0 is a domain error).
  Expr smooth_tree(int max_depth) {
    if (max_depth <= 1 || coin(0.3))
      return leaf();
    switch (pick(0, 5)) {
    case 0: return Expr::add(smooth_tree(max_depth - 1), smooth_tree(max_depth - 1));
    case 1: return Expr::mul(smooth_tree(max_depth - 1), smooth_tree(max_depth - 1));
    case 2: return Expr::sub(smooth_tree(max_depth - 1), smooth_tree(max_depth - 1));
    case 3: return Expr::pow(smooth_tree(max_depth - 1), Rational(pick(1, 3)));
    case 4: return Expr::sin(smooth_tree(max_depth - 1));
    default: return Expr::cos(smooth_tree(max_depth - 1));
    }
  }

  Expr leaf() {
    if (coin(0.5))
      return Expr::variable(var_);
    return Expr::constant(Number{rational()});
  }

  Rational rational() {
    const std::int64_t n = pick(-9, 9);
    const std::int64_t d = coin(0.6) ? 1 : pick(1, 7);
    return Rational(n, d);
  }

  Rational exponent() {
    static const Rational choices[] = {Rational(0),    Rational(1),    Rational(2),
                                       Rational(3),    Rational(-1),   Rational(-2),
                                       Rational(1, 2), Rational(5, 3), Rational(2, 7),
                                       Rational(-1, 3)};
    return choices[pick(0, 9)];
  }

  double real(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }
  int pick(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }
  bool coin(double p) { return std::bernoulli_distribution(p)(rng_); }
  std::mt19937 &engine() { return rng_; }

private:
  std::mt19937 rng_;
  std::string var_;
};

} // namespace dibbl::test_support
