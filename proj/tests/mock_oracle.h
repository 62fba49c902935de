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

// Independent reconstruction of the mock embedder's geometry for tests.

#ifndef FACTFILTER_TESTS_MOCK_ORACLE_H_
#define FACTFILTER_TESTS_MOCK_ORACLE_H_

#include <algorithm>
#include <bit>
#include <cstdint>
#include <sstream>
#include <string>
#include <vector>

namespace factfilter::testing {

// Sign bits of the 64-dimensional mock embedding: FNV-1a over the token
// bytes with the seed folded into the offset basis, then one splitmix64
// step; bit i set means +1/8 at index i.
inline std::uint64_t oracle_sign_bits(const std::string& token,
                                      std::uint64_t seed = 0x5eedf00dULL) {
  std::uint64_t h = 0xcbf29ce484222325ULL ^ seed;
  for (unsigned char c : token) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  std::uint64_t z = h + 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// Cosine of two +-1/8 vectors: (agreements - disagreements) / 64.
inline double oracle_cosine(const std::string& a, const std::string& b) {
  const int disagree = std::popcount(oracle_sign_bits(a) ^ oracle_sign_bits(b));
  return static_cast<double>(64 - 2 * disagree) / 64.0;
}

inline std::vector<std::string> oracle_words(const std::string& text) {
  std::istringstream in(text);
  std::vector<std::string> out;
  for (std::string w; in >> w;) out.push_back(w);
  return out;
}

// Mean over summary words of the best cosine to any document word.
inline double oracle_greedy(const std::string& document, const std::string& summary) {
  const auto doc = oracle_words(document);
  const auto sum = oracle_words(summary);
  double total = 0.0;
  for (const auto& s : sum) {
    double best = -1.0;
    for (const auto& d : doc) best = std::max(best, oracle_cosine(s, d));
    total += best;
  }
  return total / static_cast<double>(sum.size());
}

}  // namespace factfilter::testing

#endif  // FACTFILTER_TESTS_MOCK_ORACLE_H_
