#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace patbitext::text {

inline bool is_ascii_space(char c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v';
}
inline bool is_ascii_upper(char c) { return c >= 'A' && c <= 'Z'; }
inline bool is_ascii_lower(char c) { return c >= 'a' && c <= 'z'; }
inline bool is_ascii_digit(char c) { return c >= '0' && c <= '9'; }
inline bool is_ascii_alnum(char c) {
  return is_ascii_upper(c) || is_ascii_lower(c) || is_ascii_digit(c);
}

// Byte length of the UTF-8 sequence starting with lead byte `c`. Invalid lead
// bytes count as one byte so scanning always advances.
std::size_t utf8_length(unsigned char c);

// Decodes the code point at `pos`; advances `pos` past it. Malformed input
// yields U+FFFD for one byte.
char32_t next_code_point(std::string_view s, std::size_t& pos);

void append_utf8(std::string& out, char32_t cp);

std::string_view trim(std::string_view s);

// Collapses runs of ASCII whitespace into one space and trims both ends.
std::string collapse_whitespace(std::string_view s);

std::vector<std::string_view> split(std::string_view s, char sep);
std::vector<std::string> split_whitespace(std::string_view s);

std::string to_lower_ascii(std::string_view s);
std::string to_upper_ascii(std::string_view s);

template <class Range>
std::string join(const Range& parts, std::string_view sep) {
  std::string out;
  bool first = true;
  for (const auto& p : parts) {
    if (!first) out.append(sep);
    out.append(p);
    first = false;
  }
  return out;
}

// Keeps ASCII letters and digits only, upper-cased.
std::string alnum_upper(std::string_view s);

}  // namespace patbitext::text
