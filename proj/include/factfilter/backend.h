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

// Inference contracts for the neural components behind the factuality
// scorers and the informativeness metric. Scorers only see this interface;
// real models live behind the remote adapter, tests use the mock.

#ifndef FACTFILTER_BACKEND_H_
#define FACTFILTER_BACKEND_H_

#include <cstddef>
#include <filesystem>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

namespace factfilter {

// tokens[i] is embedded as vectors[i].
struct TokenEmbeddings {
  std::vector<std::string> tokens;
  std::vector<std::vector<double>> vectors;
};

struct DependencyArc {
  std::string head_token;
  std::string child_token;
  std::string relation_label;
  std::size_t head_index = 0;
  std::size_t child_index = 0;

  friend bool operator==(const DependencyArc&, const DependencyArc&) = default;
};

struct BackendDescriptor {
  std::string name;
  std::string version;
  bool deterministic = true;
  // False means callers must not issue concurrent calls.
  bool thread_safe = true;
  // Maximum tokens per input sequence; 0 means unlimited.
  std::size_t max_tokens = 0;
};

class Backend {
 public:
  virtual ~Backend() = default;

  virtual BackendDescriptor descriptor() const = 0;

  // The backend's own token segmentation, used for truncation and masking.
  virtual std::vector<std::string> tokenize(std::string_view text) const = 0;

  // Throws PreconditionError on empty text and LengthError past max_tokens.
  virtual TokenEmbeddings embed_tokens(std::string_view text) const = 0;

  // One log-probability (<= 0) per target token, conditioned on source.
  virtual std::vector<double> conditional_token_logprobs(std::string_view source,
                                                         std::string_view target) const = 0;

  // Probability of the factual class for each arc, order-aligned with arcs.
  virtual std::vector<double> arc_entailment_probs(std::string_view document,
                                                   std::span<const DependencyArc> arcs) const = 0;

  // Fraction of masked sentence tokens reconstructed when the model sees
  // prefix + separator + masked sentence. mask_positions index the tokens
  // returned by tokenize(sentence).
  virtual double masked_fill_accuracy(std::string_view prefix, std::string_view sentence,
                                      std::span<const std::size_t> mask_positions) const = 0;

  // Empty for inputs with fewer than two tokens.
  virtual std::vector<DependencyArc> parse_dependencies(std::string_view summary) const = 0;
};

// Forwards every call under one mutex. Used when a backend declares
// thread_safe = false and the caller runs in parallel.
class SerializedBackend final : public Backend {
 public:
  explicit SerializedBackend(const Backend& inner) : inner_(inner) {}

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

 private:
  const Backend& inner_;
  mutable std::mutex mu_;
};

struct TruncatedText {
  std::string text;
  bool truncated = false;
};

// Cuts a document to the backend's max_tokens (joined with single spaces).
// Summaries are never passed through this.
TruncatedText truncate_document(const Backend& backend, std::string_view document);

// Named constructor registry. "mock" is always present; further entries
// come from a JSON registry file:
//   {"backends": {
//      "<id>": {"type": "mock", "seed": 7, "dim": 64, "max_tokens": 512},
//      "<id>": {"type": "remote", "command": ["python3", "server.py"],
//               "options": {...}}}}
// For remote entries "options" is forwarded to the server in an init call
// (model layer, idf weighting and the like are the server's business).
class BackendRegistry {
 public:
  using Factory = std::function<std::unique_ptr<Backend>()>;

  static BackendRegistry with_builtins();

  void add(std::string id, Factory factory);
  void load_file(const std::filesystem::path& path);
  void load_json(const nlohmann::json& registry);

  bool contains(std::string_view id) const;
  std::vector<std::string> ids() const;
  // Throws ConfigError for unknown ids.
  std::unique_ptr<Backend> create(std::string_view id) const;

 private:
  std::map<std::string, Factory, std::less<>> factories_;
};

// Environment variable naming a registry file for the CLI.
inline constexpr const char* kBackendRegistryEnv = "FACTFILTER_BACKEND_REGISTRY";

}  // namespace factfilter

#endif  // FACTFILTER_BACKEND_H_
