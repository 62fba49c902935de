// Copyright 2026 The FactFilter Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "factfilter/text.h"

#include <cstdint>

namespace factfilter {
namespace {

struct Decoded {
  char32_t cp;
  std::size_t length;
};

// Decodes one code point at text[pos]. Malformed sequences decode as a
// single byte with a value that is never whitespace.
Decoded decode_at(std::string_view text, std::size_t pos) {
  const auto b0 = static_cast<unsigned char>(text[pos]);
  if (b0 < 0x80) return {b0, 1};
  std::size_t len = 0;
  char32_t cp = 0;
  if ((b0 & 0xE0) == 0xC0) {
    len = 2;
    cp = b0 & 0x1F;
  } else if ((b0 & 0xF0) == 0xE0) {
    len = 3;
    cp = b0 & 0x0F;
  } else if ((b0 & 0xF8) == 0xF0) {
    len = 4;
    cp = b0 & 0x07;
  } else {
    return {0xFFFD, 1};
  }
  if (pos + len > text.size()) return {0xFFFD, 1};
  for (std::size_t i = 1; i < len; ++i) {
    const auto b = static_cast<unsigned char>(text[pos + i]);
    if ((b & 0xC0) != 0x80) return {0xFFFD, 1};
    cp = (cp << 6) | (b & 0x3F);
  }
  return {cp, len};
}

}  // namespace

bool is_unicode_space(char32_t cp) {
  if (cp >= 0x09 && cp <= 0x0D) return true;
  if (cp >= 0x1C && cp <= 0x20) return true;
  switch (cp) {
    case 0x85:
    case 0xA0:
    case 0x1680:
    case 0x2028:
    case 0x2029:
    case 0x202F:
    case 0x205F:
    case 0x3000:
      return true;
    default:
      return cp >= 0x2000 && cp <= 0x200A;
  }
}

std::vector<std::string_view> split_whitespace(std::string_view text) {
  std::vector<std::string_view> out;
  std::size_t pos = 0;
  std::size_t start = std::string_view::npos;
  while (pos < text.size()) {
    const Decoded d = decode_at(text, pos);
    if (is_unicode_space(d.cp)) {
      if (start != std::string_view::npos) {
        out.push_back(text.substr(start, pos - start));
        start = std::string_view::npos;
      }
    } else if (start == std::string_view::npos) {
      start = pos;
    }
    pos += d.length;
  }
  if (start != std::string_view::npos) out.push_back(text.substr(start));
  return out;
}

std::size_t word_count(std::string_view text) { return split_whitespace(text).size(); }

std::size_t codepoint_count(std::string_view text) {
  std::size_t n = 0;
  for (char c : text) {
    if ((static_cast<unsigned char>(c) & 0xC0) != 0x80) ++n;
  }
  return n;
}

std::string ascii_lower(std::string_view text) {
  std::string out(text);
  for (char& c : out) {
    if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
  }
  return out;
}

bool has_content(std::string_view text) { return !split_whitespace(text).empty(); }

std::vector<std::string_view> split_sentences(std::string_view text) {
  std::vector<std::string_view> out;
  auto emit = [&](std::size_t begin, std::size_t end) {
    std::string_view piece = text.substr(begin, end - begin);
    const auto words = split_whitespace(piece);
    if (words.empty()) return;
    const char* first = words.front().data();
    const char* last = words.back().data() + words.back().size();
    out.emplace_back(first, static_cast<std::size_t>(last - first));
  };
  std::size_t begin = 0;
  std::size_t pos = 0;
  while (pos < text.size()) {
    const Decoded d = decode_at(text, pos);
    const std::size_t next = pos + d.length;
    if ((d.cp == '.' || d.cp == '!' || d.cp == '?') && next < text.size() &&
        is_unicode_space(decode_at(text, next).cp)) {
      emit(begin, next);
      begin = next;
    }
    pos = next;
  }
  emit(begin, text.size());
  return out;
}

std::string join(const std::vector<std::string>& parts, std::string_view sep) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i) out += sep;
    out += parts[i];
  }
  return out;
}

std::vector<std::string> split_list(std::string_view text, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    const std::size_t end = text.find(sep, start);
    const std::string_view piece =
        text.substr(start, end == std::string_view::npos ? std::string_view::npos : end - start);
    if (!piece.empty()) out.emplace_back(piece);
    if (end == std::string_view::npos) break;
    start = end + 1;
  }
  return out;
}

}  // namespace factfilter
