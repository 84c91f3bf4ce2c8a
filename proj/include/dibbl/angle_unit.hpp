#pragma once

#include <numbers>
#include <optional>
#include <string>
#include <string_view>

#include "rational.hpp"

namespace dibbl {

enum class AngleUnit { radians, degrees, grads };

/// Radians per unit, written exactly as coefficient * pi^pi_power.
struct ExactScale {
  Rational coefficient;
  int pi_power;
};

inline ExactScale exact_scale(AngleUnit unit) {
  switch (unit) {
  case AngleUnit::degrees:
    return {Rational(1, 180), 1};
  case AngleUnit::grads:
    return {Rational(1, 200), 1};
  case AngleUnit::radians:
    break;
  }
  return {Rational(1), 0};
}

/// The constant A in sin' = A cos: radians per unit of `unit`.
/// Exactly 1 for radians.
inline double unit_scale(AngleUnit unit) noexcept {
  switch (unit) {
  case AngleUnit::degrees:
    return std::numbers::pi / 180.0;
  case AngleUnit::grads:
    return std::numbers::pi / 200.0;
  case AngleUnit::radians:
    break;
  }
  return 1.0;
}

/// Exact ratio A(a) / A(b), available when both scales carry the same
/// power of pi.
inline std::optional<Rational> unit_scale_ratio(AngleUnit a, AngleUnit b) {
  auto sa = exact_scale(a);
  auto sb = exact_scale(b);
  if (sa.pi_power != sb.pi_power)
    return std::nullopt;
  return sa.coefficient / sb.coefficient;
}

constexpr std::string_view unit_name(AngleUnit unit) noexcept {
  switch (unit) {
  case AngleUnit::degrees:
    return "deg";
  case AngleUnit::grads:
    return "grad";
  case AngleUnit::radians:
    break;
  }
  return "rad";
}

/// Accepts the short and long spellings: rad/radians, deg/degrees, grad/grads.
inline std::optional<AngleUnit> parse_unit(std::string_view text) {
  if (text == "rad" || text == "radians" || text == "radian")
    return AngleUnit::radians;
  if (text == "deg" || text == "degrees" || text == "degree")
    return AngleUnit::degrees;
  if (text == "grad" || text == "grads" || text == "gon")
    return AngleUnit::grads;
  return std::nullopt;
}

} // namespace dibbl
