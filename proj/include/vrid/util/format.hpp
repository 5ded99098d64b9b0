#pragma once

#include <charconv>
#include <string>
#include <system_error>

namespace vrid {

/// Appends `value` in fixed notation with `digits` fractional digits.
inline void append_fixed(std::string& out, double value, int digits) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, value, std::chars_format::fixed, digits);
  if (ec != std::errc{}) {
    out += "nan";
    return;
  }
  out.append(buf, end);
}

/// Appends the shortest representation that round-trips to `value`.
inline void append_shortest(std::string& out, double value) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, value);
  if (ec != std::errc{}) {
    out += "nan";
    return;
  }
  out.append(buf, end);
}

inline std::string shortest(double value) {
  std::string s;
  append_shortest(s, value);
  return s;
}

}  // namespace vrid
