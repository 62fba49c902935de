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

#include "factfilter/mock_backend.h"

#include <cmath>
#include <unordered_set>

#include "factfilter/errors.h"
#include "factfilter/text.h"

namespace factfilter {
namespace {

std::uint64_t fnv1a(std::string_view bytes, std::uint64_t seed) {
  std::uint64_t h = 0xcbf29ce484222325ULL ^ seed;
  for (char c : bytes) {
    h ^= static_cast<unsigned char>(c);
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

std::unordered_set<std::string_view> token_set(std::string_view text) {
  const auto words = split_whitespace(text);
  return {words.begin(), words.end()};
}

}  // namespace

MockBackend::MockBackend(MockOptions options) : options_(options) {
  if (options_.dim == 0) throw ConfigError("mock backend dim must be positive");
}

BackendDescriptor MockBackend::descriptor() const {
  return {"mock", "1", /*deterministic=*/true, /*thread_safe=*/true, options_.max_tokens};
}

std::vector<std::string> MockBackend::tokenize(std::string_view text) const {
  const auto words = split_whitespace(text);
  return {words.begin(), words.end()};
}

std::vector<std::string> MockBackend::checked_tokens(std::string_view text,
                                                     const char* what) const {
  auto tokens = tokenize(text);
  if (tokens.empty()) throw PreconditionError(std::string(what) + " is empty");
  if (options_.max_tokens != 0 && tokens.size() > options_.max_tokens) {
    throw LengthError(tokens.size(), options_.max_tokens);
  }
  return tokens;
}

std::vector<double> MockBackend::token_vector(std::string_view token) const {
  std::uint64_t state = fnv1a(token, options_.seed);
  const double magnitude = 1.0 / std::sqrt(static_cast<double>(options_.dim));
  std::vector<double> v(options_.dim);
  std::uint64_t bits = 0;
  for (std::size_t i = 0; i < options_.dim; ++i) {
    if (i % 64 == 0) bits = splitmix64(state);
    v[i] = ((bits >> (i % 64)) & 1U) ? magnitude : -magnitude;
  }
  return v;
}

TokenEmbeddings MockBackend::embed_tokens(std::string_view text) const {
  TokenEmbeddings out;
  out.tokens = checked_tokens(text, "text");
  out.vectors.reserve(out.tokens.size());
  for (const auto& t : out.tokens) out.vectors.push_back(token_vector(t));
  return out;
}

std::vector<double> MockBackend::conditional_token_logprobs(std::string_view source,
                                                            std::string_view target) const {
  checked_tokens(source, "source");
  const auto target_tokens = checked_tokens(target, "target");
  const auto present = token_set(source);
  const double hit = std::log(kPresentProb);
  const double miss = std::log(kAbsentProb);
  std::vector<double> out;
  out.reserve(target_tokens.size());
  for (const auto& t : target_tokens) out.push_back(present.count(t) ? hit : miss);
  return out;
}

std::vector<double> MockBackend::arc_entailment_probs(std::string_view document,
                                                      std::span<const DependencyArc> arcs) const {
  if (arcs.empty()) throw PreconditionError("arc list is empty");
  checked_tokens(document, "document");
  const auto present = token_set(document);
  std::vector<double> out;
  out.reserve(arcs.size());
  for (const auto& arc : arcs) {
    out.push_back(present.count(arc.head_token) && present.count(arc.child_token) ? 1.0 : 0.0);
  }
  return out;
}

double MockBackend::masked_fill_accuracy(std::string_view prefix, std::string_view sentence,
                                         std::span<const std::size_t> mask_positions) const {
  if (mask_positions.empty()) throw PreconditionError("mask set is empty");
  const auto tokens = checked_tokens(sentence, "sentence");
  const auto known = token_set(prefix);
  std::size_t recovered = 0;
  for (std::size_t pos : mask_positions) {
    if (pos >= tokens.size()) {
      throw PreconditionError("mask position " + std::to_string(pos) + " outside sentence of " +
                              std::to_string(tokens.size()) + " tokens");
    }
    if (known.count(tokens[pos])) ++recovered;
  }
  return static_cast<double>(recovered) / static_cast<double>(mask_positions.size());
}

std::vector<DependencyArc> MockBackend::parse_dependencies(std::string_view summary) const {
  const auto tokens = checked_tokens(summary, "summary");
  std::vector<DependencyArc> arcs;
  if (tokens.size() < 2) return arcs;
  const std::size_t root = tokens.size() / 2;
  arcs.reserve(tokens.size() - 1);
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    if (i == root) continue;
    const std::size_t head = i < root ? i + 1 : i - 1;
    arcs.push_back({tokens[head], tokens[i], "dep", head, i});
  }
  return arcs;
}

}  // namespace factfilter
