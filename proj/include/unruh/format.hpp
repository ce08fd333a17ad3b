#pragma once

#include <charconv>
#include <cmath>
#include <string>

namespace unruh {

/// Shortest decimal with at most 9 significant digits (printf "%.9g").
/// Negative zero prints as "0" so reruns never differ in sign of zero.
inline std::string format_number(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  if (x == 0.0) return "0";
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, x, std::chars_format::general, 9);
  return std::string(buf, res.ptr);
}

}  // namespace unruh
