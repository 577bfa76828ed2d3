#pragma once

#include <charconv>
#include <string>

namespace meanbound {

// Shortest decimal representation that round-trips the exact double;
// keeps emitted records byte-reproducible.
inline std::string format_double(double v) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

}  // namespace meanbound
