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

// Model-free backend with closed-form outputs, bit-identical on every
// platform. Tokens are Unicode-whitespace runs, compared by exact string.
//
//   embeddings     each token string hashes (FNV-1a, seeded, then splitmix64
//                  expansion) to a sign pattern; entry i is +-1/sqrt(dim).
//                  Every vector has norm exactly 1 for dim in {4, 16, 64, 256}
//                  and all dot products are exact multiples of 1/dim.
//   logprobs       log(0.9) if the target token occurs in the source, else
//                  log(0.1).
//   entailment     1 if both head and child tokens occur in the document,
//                  else 0.
//   masked fill    a masked token is recovered iff it occurs in the prefix.
//   parser         root is token n/2; tokens left of it attach to their
//                  right neighbour, tokens right of it to their left
//                  neighbour ("a b c" gives b->a, b->c).

#ifndef FACTFILTER_MOCK_BACKEND_H_
#define FACTFILTER_MOCK_BACKEND_H_

#include <cstdint>

#include "factfilter/backend.h"

namespace factfilter {

struct MockOptions {
  std::size_t dim = 64;
  std::uint64_t seed = 0x5eed'f00dULL;
  std::size_t max_tokens = 1024;
};

class MockBackend final : public Backend {
 public:
  static constexpr double kPresentProb = 0.9;
  static constexpr double kAbsentProb = 0.1;

  explicit MockBackend(MockOptions options = {});

  BackendDescriptor descriptor() const override;
  std::vector<std::string> tokenize(std::string_view text) const override;
  TokenEmbeddings embed_tokens(std::string_view text) const override;
  std::vector<double> conditional_token_logprobs(std::string_view source,
                                                 std::string_view target) const override;
  std::vector<double> arc_entailment_probs(std::string_view document,
                                           std::span<const DependencyArc> arcs) const override;
  double masked_fill_accuracy(std::string_view prefix, std::string_view sentence,
                              std::span<const std::size_t> mask_positions) const override;
  std::vector<DependencyArc> parse_dependencies(std::string_view summary) const override;

  // The embedding of a single token string.
  std::vector<double> token_vector(std::string_view token) const;

 private:
  std::vector<std::string> checked_tokens(std::string_view text, const char* what) const;

  MockOptions options_;
};

}  // namespace factfilter

#endif  // FACTFILTER_MOCK_BACKEND_H_
