#pragma once

#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <ostream>
#include <type_traits>

#include "angle_unit.hpp"
#include "error.hpp"
#include "rational.hpp"

namespace dibbl {

/// The operation has no exact rational result (trigonometry, irrational
/// powers). Exact evaluation paths catch this and fall back to floating point.
class InexactError : public Error {
public:
  InexactError() : Error("result is not exactly representable") {}
};

/// A number with a real part and the coefficient of an infinitesimal dx
/// whose square is zero: real + dibbl * dx, dx * dx = 0.
///
/// `Scalar` is `double` for ordinary evaluation or `Rational` for the exact
/// path. Every operation is closed over this two-field form; no higher-order
/// term is ever represented.
template <typename Scalar> struct Dual {
  Scalar real{};
  Scalar dibbl{};

  static constexpr Dual constant(Scalar v) { return {v, Scalar(0)}; }
  static constexpr Dual variable(Scalar v) { return {v, Scalar(1)}; }

  friend bool operator==(const Dual &, const Dual &) = default;
};

template <typename Scalar> Dual(Scalar, Scalar) -> Dual<Scalar>;

template <typename Scalar>
std::ostream &operator<<(std::ostream &os, const Dual<Scalar> &d) {
  return os << '(' << d.real << ", " << d.dibbl << ')';
}

namespace detail {

/// Integer exponents up to this magnitude are computed by folding dual_mul.
inline constexpr std::int64_t kFoldLimit = 64;

inline double checked(double v) {
  if (!std::isfinite(v))
    throw RangeError("non-finite result");
  return v;
}

inline const Rational &checked(const Rational &v) { return v; }

template <typename Scalar> Dual<Scalar> checked(Dual<Scalar> d) {
  checked(d.real);
  checked(d.dibbl);
  return d;
}

inline bool is_zero(double v) { return v == 0.0; }
inline bool is_zero(const Rational &v) { return v.is_zero(); }
inline bool is_negative(double v) { return v < 0.0; }
inline bool is_negative(const Rational &v) { return v.sign() < 0; }

/// Rejects the (base, exponent) pairs that have no real, finite power
/// with a finite slope.
template <typename Scalar> void check_pow_domain(const Scalar &base, const Rational &p) {
  if (is_zero(base)) {
    if (p < Rational(1))
      throw DomainError("zero base requires an exponent of at least 1, got " + p.str());
    return;
  }
  if (is_negative(base) && !p.is_integer())
    throw DomainError("negative base with non-integer exponent " + p.str());
}

} // namespace detail

template <typename Scalar>
Dual<Scalar> dual_add(const Dual<Scalar> &u, const Dual<Scalar> &v) {
  return detail::checked(Dual<Scalar>{u.real + v.real, u.dibbl + v.dibbl});
}

template <typename Scalar>
Dual<Scalar> dual_sub(const Dual<Scalar> &u, const Dual<Scalar> &v) {
  return detail::checked(Dual<Scalar>{u.real - v.real, u.dibbl - v.dibbl});
}

template <typename Scalar> Dual<Scalar> dual_neg(const Dual<Scalar> &u) {
  return {-u.real, -u.dibbl};
}

/// (a + b dx)(c + d dx) = ac + (ad + bc) dx; the bd dx^2 term vanishes.
template <typename Scalar>
Dual<Scalar> dual_mul(const Dual<Scalar> &u, const Dual<Scalar> &v) {
  return detail::checked(
      Dual<Scalar>{u.real * v.real, u.real * v.dibbl + u.dibbl * v.real});
}

template <typename Scalar>
Dual<Scalar> dual_div(const Dual<Scalar> &u, const Dual<Scalar> &v) {
  if (detail::is_zero(v.real))
    throw DivisionByZeroError();
  return detail::checked(Dual<Scalar>{
      u.real / v.real, (u.dibbl * v.real - u.real * v.dibbl) / (v.real * v.real)});
}

/// Plain (non-dual) power with the same domain rules and the same rounding
/// as the real part of dual_pow.
template <typename Scalar> Scalar scalar_pow(const Scalar &base, const Rational &p) {
  detail::check_pow_domain(base, p);
  if (p.is_integer() && std::llabs(p.num()) <= detail::kFoldLimit) {
    const std::int64_t n = std::llabs(p.num());
    Scalar acc(1);
    for (std::int64_t i = 0; i < n; ++i)
      acc = detail::checked(Scalar(acc * base));
    if (p.num() < 0) {
      if (detail::is_zero(acc))
        throw DivisionByZeroError();
      acc = detail::checked(Scalar(Scalar(1) / acc));
    }
    return acc;
  }
  if constexpr (std::is_same_v<Scalar, Rational>) {
    if (!p.is_integer())
      throw InexactError();
    return pow(base, p.num());
  } else {
    if (detail::is_zero(base))
      return 0.0;
    return detail::checked(std::pow(base, p.to_double()));
  }
}

/// u^p = u.real^p + p * u.real^(p-1) * u.dibbl dx.
///
/// Integer exponents up to 64 in magnitude fold dual_mul (and invert with
/// dual_div when negative), so they agree exactly with repeated
/// multiplication. Other exponents use the closed form.
template <typename Scalar>
Dual<Scalar> dual_pow(const Dual<Scalar> &u, const Rational &p) {
  detail::check_pow_domain(u.real, p);
  if (p.is_integer() && std::llabs(p.num()) <= detail::kFoldLimit) {
    const std::int64_t n = std::llabs(p.num());
    Dual<Scalar> acc = Dual<Scalar>::constant(Scalar(1));
    for (std::int64_t i = 0; i < n; ++i)
      acc = dual_mul(acc, u);
    if (p.num() < 0)
      acc = dual_div(Dual<Scalar>::constant(Scalar(1)), acc);
    return acc;
  }
  if (detail::is_zero(u.real)) // p > 1 here
    return {Scalar(0), Scalar(0)};
  const Scalar value = scalar_pow(u.real, p);
  const Scalar below = scalar_pow(u.real, p - Rational(1));
  Scalar factor;
  if constexpr (std::is_same_v<Scalar, Rational>)
    factor = p;
  else
    factor = p.to_double();
  return detail::checked(Dual<Scalar>{value, Scalar(factor * below * u.dibbl)});
}

/// sin of an angle measured in `unit`; the slope picks up A = unit_scale(unit).
inline double scalar_sin(double x, AngleUnit unit) {
  return detail::checked(std::sin(unit_scale(unit) * x));
}

inline double scalar_cos(double x, AngleUnit unit) {
  return detail::checked(std::cos(unit_scale(unit) * x));
}

inline Dual<double> dual_sin(const Dual<double> &u, AngleUnit unit) {
  const double a = unit_scale(unit);
  const double r = a * u.real;
  return detail::checked(Dual<double>{std::sin(r), a * std::cos(r) * u.dibbl});
}

inline Dual<double> dual_cos(const Dual<double> &u, AngleUnit unit) {
  const double a = unit_scale(unit);
  const double r = a * u.real;
  return detail::checked(Dual<double>{std::cos(r), -a * std::sin(r) * u.dibbl});
}

inline Dual<Rational> dual_sin(const Dual<Rational> &, AngleUnit) { throw InexactError(); }
inline Dual<Rational> dual_cos(const Dual<Rational> &, AngleUnit) { throw InexactError(); }
inline Rational scalar_sin(const Rational &, AngleUnit) { throw InexactError(); }
inline Rational scalar_cos(const Rational &, AngleUnit) { throw InexactError(); }

template <typename Scalar>
Dual<Scalar> operator+(const Dual<Scalar> &u, const Dual<Scalar> &v) {
  return dual_add(u, v);
}
template <typename Scalar>
Dual<Scalar> operator-(const Dual<Scalar> &u, const Dual<Scalar> &v) {
  return dual_sub(u, v);
}
template <typename Scalar> Dual<Scalar> operator-(const Dual<Scalar> &u) {
  return dual_neg(u);
}
template <typename Scalar>
Dual<Scalar> operator*(const Dual<Scalar> &u, const Dual<Scalar> &v) {
  return dual_mul(u, v);
}
template <typename Scalar>
Dual<Scalar> operator/(const Dual<Scalar> &u, const Dual<Scalar> &v) {
  return dual_div(u, v);
}

inline Dual<double> to_double(const Dual<Rational> &d) {
  return {d.real.to_double(), d.dibbl.to_double()};
}

} // namespace dibbl
