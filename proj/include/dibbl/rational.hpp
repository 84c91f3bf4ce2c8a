#pragma once

#include <cstdint>
#include <numeric>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>

#include "error.hpp"

namespace dibbl {

/// Raised when an exact rational result does not fit in 64-bit terms.
class RationalOverflow : public RangeError {
public:
  RationalOverflow() : RangeError("rational overflow") {}
};

/// Exact rational number with 64-bit numerator and denominator.
/// Always normalized: gcd(num, den) == 1 and den > 0.
class Rational {
public:
  constexpr Rational() = default;
  constexpr Rational(std::int64_t n) : num_(n) {} // NOLINT: implicit from integers
  Rational(std::int64_t n, std::int64_t d) { assign(n, d); }

  constexpr std::int64_t num() const noexcept { return num_; }
  constexpr std::int64_t den() const noexcept { return den_; }

  constexpr bool is_integer() const noexcept { return den_ == 1; }
  constexpr bool is_zero() const noexcept { return num_ == 0; }
  constexpr int sign() const noexcept { return (num_ > 0) - (num_ < 0); }

  double to_double() const noexcept {
    return static_cast<double>(num_) / static_cast<double>(den_);
  }

  /// "n" for integers, "n/d" otherwise.
  std::string str() const {
    if (den_ == 1)
      return std::to_string(num_);
    return std::to_string(num_) + "/" + std::to_string(den_);
  }

  /// Parses an unsigned decimal literal (digits, optional fraction,
  /// optional exponent) exactly. Returns nullopt when the value cannot be
  /// represented with 64-bit terms or the text is not a literal.
  static std::optional<Rational> from_decimal(std::string_view text);

  /// Parses "[-]int", "[-]int/int" or a signed decimal literal.
  static std::optional<Rational> from_string(std::string_view text);

  friend Rational operator+(const Rational &a, const Rational &b) {
    return make(wide(a.num_) * b.den_ + wide(b.num_) * a.den_,
                wide(a.den_) * b.den_);
  }
  friend Rational operator-(const Rational &a, const Rational &b) {
    return make(wide(a.num_) * b.den_ - wide(b.num_) * a.den_,
                wide(a.den_) * b.den_);
  }
  friend Rational operator*(const Rational &a, const Rational &b) {
    return make(wide(a.num_) * b.num_, wide(a.den_) * b.den_);
  }
  friend Rational operator/(const Rational &a, const Rational &b) {
    if (b.num_ == 0)
      throw DivisionByZeroError();
    return make(wide(a.num_) * b.den_, wide(a.den_) * b.num_);
  }
  friend Rational operator-(const Rational &a) {
    return make(-wide(a.num_), a.den_);
  }

  friend bool operator==(const Rational &, const Rational &) = default;
  friend bool operator<(const Rational &a, const Rational &b) {
    return wide(a.num_) * b.den_ < wide(b.num_) * a.den_;
  }
  friend bool operator>(const Rational &a, const Rational &b) { return b < a; }
  friend bool operator<=(const Rational &a, const Rational &b) { return !(b < a); }
  friend bool operator>=(const Rational &a, const Rational &b) { return !(a < b); }

  friend std::ostream &operator<<(std::ostream &os, const Rational &r) {
    return os << r.str();
  }

private:
  using wide_t = __int128;
  static constexpr wide_t wide(std::int64_t v) { return v; }

  static Rational make(wide_t n, wide_t d) {
    if (d == 0)
      throw DivisionByZeroError();
    if (d < 0) {
      n = -n;
      d = -d;
    }
    wide_t a = n < 0 ? -n : n;
    wide_t b = d;
    while (b != 0) {
      wide_t t = a % b;
      a = b;
      b = t;
    }
    if (a > 1) {
      n /= a;
      d /= a;
    }
    constexpr wide_t lo = INT64_MIN + 1; // keep negation safe
    constexpr wide_t hi = INT64_MAX;
    if (n < lo || n > hi || d > hi)
      throw RationalOverflow();
    Rational r;
    r.num_ = static_cast<std::int64_t>(n);
    r.den_ = static_cast<std::int64_t>(d);
    return r;
  }

  void assign(std::int64_t n, std::int64_t d) { *this = make(n, d); }

  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
};

/// Integer power by repeated squaring; negative exponents invert.
inline Rational pow(Rational base, std::int64_t exponent) {
  if (exponent < 0)
    return Rational(1) / pow(base, -exponent);
  Rational result(1);
  while (exponent > 0) {
    if (exponent & 1)
      result = result * base;
    exponent >>= 1;
    if (exponent > 0)
      base = base * base;
  }
  return result;
}

inline std::optional<Rational> Rational::from_decimal(std::string_view text) {
  std::size_t i = 0;
  const std::size_t n = text.size();
  wide_t mantissa = 0;
  std::int64_t scale = 0; // value = mantissa * 10^scale
  bool any_digit = false;
  bool overflow = false;
  constexpr wide_t limit = INT64_MAX;

  auto push_digit = [&](char c, bool fractional) {
    any_digit = true;
    if (overflow)
      return;
    mantissa = mantissa * 10 + (c - '0');
    if (fractional)
      --scale;
    if (mantissa > limit)
      overflow = true;
  };

  while (i < n && text[i] >= '0' && text[i] <= '9')
    push_digit(text[i++], false);
  if (i < n && text[i] == '.') {
    ++i;
    while (i < n && text[i] >= '0' && text[i] <= '9')
      push_digit(text[i++], true);
  }
  if (!any_digit)
    return std::nullopt;
  if (i < n && (text[i] == 'e' || text[i] == 'E')) {
    ++i;
    bool negative = false;
    if (i < n && (text[i] == '+' || text[i] == '-'))
      negative = text[i++] == '-';
    if (i == n)
      return std::nullopt;
    std::int64_t exp = 0;
    while (i < n && text[i] >= '0' && text[i] <= '9') {
      exp = exp * 10 + (text[i++] - '0');
      if (exp > 400)
        overflow = true;
    }
    scale += negative ? -exp : exp;
  }
  if (i != n || overflow)
    return std::nullopt;
  if (mantissa == 0)
    return Rational(0);

  // Strip trailing zeros into the exponent before scaling.
  while (mantissa % 10 == 0) {
    mantissa /= 10;
    ++scale;
  }
  wide_t num = mantissa;
  wide_t den = 1;
  for (; scale > 0; --scale) {
    num *= 10;
    if (num > limit)
      return std::nullopt;
  }
  for (; scale < 0; ++scale) {
    den *= 10;
    if (den > limit)
      return std::nullopt;
  }
  return make(num, den);
}

inline std::optional<Rational> Rational::from_string(std::string_view text) {
  bool negative = false;
  if (!text.empty() && (text.front() == '-' || text.front() == '+')) {
    negative = text.front() == '-';
    text.remove_prefix(1);
  }
  std::optional<Rational> value;
  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    auto is_int = [](std::string_view s) {
      if (s.empty())
        return false;
      for (char c : s)
        if (c < '0' || c > '9')
          return false;
      return true;
    };
    auto lhs = text.substr(0, slash);
    auto rhs = text.substr(slash + 1);
    if (!is_int(lhs) || !is_int(rhs))
      return std::nullopt;
    auto n = from_decimal(lhs);
    auto d = from_decimal(rhs);
    if (!n || !d || d->is_zero())
      return std::nullopt;
    value = *n / *d;
  } else {
    value = from_decimal(text);
  }
  if (value && negative)
    value = -*value;
  return value;
}

} // namespace dibbl
