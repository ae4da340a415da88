#pragma once

#include <charconv>
#include <cstdint>
#include <string>

namespace dimsp {

/// Shortest decimal form that round-trips the value exactly. Locale
/// independent; never emits thousands separators.
inline std::string format_number(double value) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  (void)ec;
  return std::string(buf, ptr);
}

inline std::string format_number(std::int64_t value) { return std::to_string(value); }

}  // namespace dimsp
