#pragma once

#include <charconv>
#include <cmath>
#include <optional>
#include <string>
#include <string_view>
#include <system_error>

#include "rational.hpp"

namespace dibbl {

/// Locale-independent "%.{digits}g". Negative zero prints as "0".
inline std::string format_significant(double v, int digits) {
  if (v == 0.0)
    v = 0.0;
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, digits);
  return std::string(buf, end);
}

/// Like format_significant but keeps trailing zeros, so the printed width
/// shows the precision ("1.00000" rather than "1").
inline std::string format_precision(double v, int digits) {
  std::string s = format_significant(v, digits);
  if (s.find_first_of("ein") != std::string::npos)
    return s;
  int seen = 0;
  bool leading = true;
  for (char ch : s) {
    if (ch < '0' || ch > '9')
      continue;
    if (leading && ch == '0')
      continue;
    leading = false;
    ++seen;
  }
  if (leading)
    seen = 1; // the value is zero
  if (seen >= digits)
    return s;
  if (s.find('.') == std::string::npos)
    s += '.';
  s.append(static_cast<std::size_t>(digits - seen), '0');
  return s;
}

/// Shortest text that reads back as the same double.
inline std::string format_shortest(double v) {
  if (v == 0.0)
    v = 0.0;
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, end);
}

/// A real given on a command line or in a corpus: "0.2", "-3", "1/5", "1e-6".
struct ParsedReal {
  double value;
  std::optional<Rational> exact;
};

inline std::optional<ParsedReal> parse_real(std::string_view text) {
  if (auto r = Rational::from_string(text))
    return ParsedReal{r->to_double(), r};
  double d = 0.0;
  const char *first = text.data();
  const char *last = text.data() + text.size();
  if (first != last && *first == '+')
    ++first;
  auto [ptr, ec] = std::from_chars(first, last, d);
  if (ec != std::errc() || ptr != last || first == last || !std::isfinite(d))
    return std::nullopt;
  return ParsedReal{d, std::nullopt};
}

} // namespace dibbl
