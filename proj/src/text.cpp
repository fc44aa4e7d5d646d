#include "hits/text.hpp"

namespace hits::text {

namespace {

constexpr bool is_continuation(unsigned char c) noexcept { return (c & 0xC0) == 0x80; }

}  // namespace

std::string ascii_lower(std::string_view s) {
  std::string out(s);
  for (auto& c : out) {
    if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
  }
  return out;
}

bool is_blank(std::string_view s) noexcept {
  for (unsigned char c : s) {
    if (c != ' ' && c != '\t' && c != '\n' && c != '\r' && c != '\f' && c != '\v') return false;
  }
  return true;
}

std::vector<TokenSpan> word_spans(std::string_view s) {
  std::vector<TokenSpan> spans;
  std::size_t i = 0;
  while (i < s.size()) {
    if (!is_word_byte(static_cast<unsigned char>(s[i]))) {
      ++i;
      continue;
    }
    std::size_t j = i;
    while (j < s.size() && is_word_byte(static_cast<unsigned char>(s[j]))) ++j;
    spans.push_back({i, j - i});
    i = j;
  }
  return spans;
}

std::vector<std::string> words(std::string_view s) {
  std::vector<std::string> out;
  for (const auto& span : word_spans(s)) out.push_back(ascii_lower(s.substr(span.begin, span.length)));
  return out;
}

std::vector<std::size_t> code_point_offsets(std::string_view s) {
  std::vector<std::size_t> offsets;
  offsets.reserve(s.size() + 1);
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (!is_continuation(static_cast<unsigned char>(s[i]))) offsets.push_back(i);
  }
  offsets.push_back(s.size());
  return offsets;
}

std::size_t code_point_count(std::string_view s) noexcept {
  std::size_t n = 0;
  for (unsigned char c : s) n += is_continuation(c) ? 0 : 1;
  return n;
}

}  // namespace hits::text
