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

#include "factfilter/backend.h"

#include <fstream>

#include "factfilter/errors.h"
#include "factfilter/mock_backend.h"
#include "factfilter/remote_backend.h"
#include "factfilter/text.h"

namespace factfilter {

BackendDescriptor SerializedBackend::descriptor() const {
  std::lock_guard<std::mutex> lock(mu_);
  return inner_.descriptor();
}

std::vector<std::string> SerializedBackend::tokenize(std::string_view text) const {
  std::lock_guard<std::mutex> lock(mu_);
  return inner_.tokenize(text);
}

TokenEmbeddings SerializedBackend::embed_tokens(std::string_view text) const {
  std::lock_guard<std::mutex> lock(mu_);
  return inner_.embed_tokens(text);
}

std::vector<double> SerializedBackend::conditional_token_logprobs(std::string_view source,
                                                                  std::string_view target) const {
  std::lock_guard<std::mutex> lock(mu_);
  return inner_.conditional_token_logprobs(source, target);
}

std::vector<double> SerializedBackend::arc_entailment_probs(
    std::string_view document, std::span<const DependencyArc> arcs) const {
  std::lock_guard<std::mutex> lock(mu_);
  return inner_.arc_entailment_probs(document, arcs);
}

double SerializedBackend::masked_fill_accuracy(std::string_view prefix, std::string_view sentence,
                                               std::span<const std::size_t> mask_positions) const {
  std::lock_guard<std::mutex> lock(mu_);
  return inner_.masked_fill_accuracy(prefix, sentence, mask_positions);
}

std::vector<DependencyArc> SerializedBackend::parse_dependencies(std::string_view summary) const {
  std::lock_guard<std::mutex> lock(mu_);
  return inner_.parse_dependencies(summary);
}

TruncatedText truncate_document(const Backend& backend, std::string_view document) {
  const std::size_t limit = backend.descriptor().max_tokens;
  if (limit == 0) return {std::string(document), false};
  auto tokens = backend.tokenize(document);
  if (tokens.size() <= limit) return {std::string(document), false};
  tokens.resize(limit);
  return {join(tokens, " "), true};
}

// ---------------------------------------------------------------------------

BackendRegistry BackendRegistry::with_builtins() {
  BackendRegistry r;
  r.add("mock", [] { return std::make_unique<MockBackend>(); });
  return r;
}

void BackendRegistry::add(std::string id, Factory factory) {
  factories_[std::move(id)] = std::move(factory);
}

void BackendRegistry::load_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open backend registry " + path.string());
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError("malformed backend registry " + path.string() + ": " + e.what());
  }
  load_json(j);
}

void BackendRegistry::load_json(const nlohmann::json& registry) {
  if (!registry.is_object() || !registry.contains("backends") ||
      !registry.at("backends").is_object()) {
    throw ConfigError("backend registry must be an object with a \"backends\" object");
  }
  for (const auto& [id, entry] : registry.at("backends").items()) {
    const std::string type = entry.value("type", std::string());
    if (type == "mock") {
      MockOptions opts;
      opts.dim = entry.value("dim", opts.dim);
      opts.seed = entry.value("seed", opts.seed);
      opts.max_tokens = entry.value("max_tokens", opts.max_tokens);
      add(id, [opts] { return std::make_unique<MockBackend>(opts); });
    } else if (type == "remote") {
      if (!entry.contains("command") || !entry.at("command").is_array()) {
        throw ConfigError("remote backend \"" + id + "\" needs a \"command\" array");
      }
      const auto command = entry.at("command").get<std::vector<std::string>>();
      const nlohmann::json options = entry.value("options", nlohmann::json::object());
      add(id, [command, options] {
        return std::make_unique<RemoteBackend>(std::make_unique<ProcessTransport>(command),
                                               options);
      });
    } else {
      throw ConfigError("backend \"" + id + "\" has unknown type \"" + type + "\"");
    }
  }
}

bool BackendRegistry::contains(std::string_view id) const {
  return factories_.find(id) != factories_.end();
}

std::vector<std::string> BackendRegistry::ids() const {
  std::vector<std::string> out;
  for (const auto& [id, f] : factories_) out.push_back(id);
  return out;
}

std::unique_ptr<Backend> BackendRegistry::create(std::string_view id) const {
  auto it = factories_.find(id);
  if (it == factories_.end()) throw ConfigError("unknown backend \"" + std::string(id) + "\"");
  return it->second();
}

}  // namespace factfilter
