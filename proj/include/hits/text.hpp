#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace hits::text {

// Word characters are ASCII letters and digits plus every non-ASCII byte, so
// UTF-8 encoded words stay in one piece. Everything else separates tokens.
constexpr bool is_word_byte(unsigned char c) noexcept {
  return (c >= '0' && c <= '9') || (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c >= 0x80;
}

std::string ascii_lower(std::string_view s);

bool is_blank(std::string_view s) noexcept;

struct TokenSpan {
  std::size_t begin;
  std::size_t length;
};

// Maximal runs of word bytes, in order of appearance.
std::vector<TokenSpan> word_spans(std::string_view s);

// Lowercased word tokens.
std::vector<std::string> words(std::string_view s);

// Byte offsets of UTF-8 code point starts; the final element is s.size().
std::vector<std::size_t> code_point_offsets(std::string_view s);

std::size_t code_point_count(std::string_view s) noexcept;

}  // namespace hits::text
