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

// Out-of-process backends over a line-delimited JSON protocol. Each request
// is one line {"op": <name>, "args": {...}}; each reply is one line
// {"result": ...} or {"error": {"type": "length"|"precondition"|"backend",
// "message": str, "length": n, "limit": n}}.
//
//   op                          args                                 result
//   init                        options object                       null
//   descriptor                  {}                                   {name, version, deterministic,
//                                                                     thread_safe, max_tokens}
//   tokenize                    {text}                               [str]
//   embed_tokens                {text}                               {tokens: [str], vectors: [[num]]}
//   conditional_token_logprobs  {source, target}                     [num]
//   arc_entailment_probs        {document, arcs: [arc]}              [num]
//   masked_fill_accuracy        {prefix, sentence, mask_positions}   num
//   parse_dependencies          {summary}                            [arc]
//
// arc = {head_token, child_token, relation_label, head_index, child_index}.

#ifndef FACTFILTER_REMOTE_BACKEND_H_
#define FACTFILTER_REMOTE_BACKEND_H_

#include <iosfwd>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include "factfilter/backend.h"
#include "json.hpp"

namespace factfilter {

nlohmann::json arc_to_json(const DependencyArc& arc);
DependencyArc arc_from_json(const nlohmann::json& j);

// Sends one request line and returns the reply line. Not thread-safe.
class Transport {
 public:
  virtual ~Transport() = default;
  virtual std::string exchange(const std::string& request_line) = 0;
};

// Runs a server process (argv[0] searched in PATH) and talks to it over
// its stdin/stdout. The child is terminated on destruction.
class ProcessTransport final : public Transport {
 public:
  explicit ProcessTransport(std::vector<std::string> argv);
  ~ProcessTransport() override;
  ProcessTransport(const ProcessTransport&) = delete;
  ProcessTransport& operator=(const ProcessTransport&) = delete;

  std::string exchange(const std::string& request_line) override;

 private:
  int pid_ = -1;
  int to_child_ = -1;
  int from_child_ = -1;
  std::string buffer_;
};

// Dispatches straight into a local backend; the request still goes through
// JSON text so the wire format is exercised end to end.
class LoopbackTransport final : public Transport {
 public:
  explicit LoopbackTransport(const Backend& backend) : backend_(backend) {}
  std::string exchange(const std::string& request_line) override;

 private:
  const Backend& backend_;
};

class RemoteBackend final : public Backend {
 public:
  explicit RemoteBackend(std::unique_ptr<Transport> transport,
                         nlohmann::json options = nlohmann::json::object());

  // Reports thread_safe = false regardless of the server.
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
  nlohmann::json call(const char* op, nlohmann::json args) const;

  std::unique_ptr<Transport> transport_;
  mutable std::mutex mu_;
  BackendDescriptor descriptor_;
};

// Server side of the protocol.
nlohmann::json handle_backend_request(const Backend& backend, const nlohmann::json& request);
// Answers requests until EOF on `in`.
void serve_backend(const Backend& backend, std::istream& in, std::ostream& out);

}  // namespace factfilter

#endif  // FACTFILTER_REMOTE_BACKEND_H_
