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

// UTF-8 text helpers shared by the corpus statistics, the mock backend and
// the n-gram metrics.

#ifndef FACTFILTER_TEXT_H_
#define FACTFILTER_TEXT_H_

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace factfilter {

// True for the code points Python's str.split() treats as whitespace:
// ASCII \t \n \v \f \r, U+001C..U+001F, space, U+0085, U+00A0, U+1680,
// U+2000..U+200A, U+2028, U+2029, U+202F, U+205F, U+3000.
bool is_unicode_space(char32_t cp);

// Maximal runs of non-whitespace code points. Invalid UTF-8 bytes are kept
// as part of the surrounding token.
std::vector<std::string_view> split_whitespace(std::string_view text);

std::size_t word_count(std::string_view text);

// Number of UTF-8 code points (continuation bytes are not counted).
std::size_t codepoint_count(std::string_view text);

// Lowercases ASCII letters only; other bytes pass through unchanged.
std::string ascii_lower(std::string_view text);

// True if the text contains at least one non-whitespace code point.
bool has_content(std::string_view text);

// Splits after '.', '!' or '?' when followed by whitespace. Returned
// sentences are trimmed and never empty.
std::vector<std::string_view> split_sentences(std::string_view text);

std::string join(const std::vector<std::string>& parts, std::string_view sep);
std::vector<std::string> split_list(std::string_view text, char sep);

}  // namespace factfilter

#endif  // FACTFILTER_TEXT_H_
