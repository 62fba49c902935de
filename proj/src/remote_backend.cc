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

#include "factfilter/remote_backend.h"

#include <signal.h>
#include <sys/types.h>
#include <sys/wait.h>
#include <unistd.h>

#include <cerrno>
#include <cstring>
#include <istream>
#include <ostream>

#include "factfilter/errors.h"

namespace factfilter {

using nlohmann::json;

json arc_to_json(const DependencyArc& arc) {
  return json{{"head_token", arc.head_token},
              {"child_token", arc.child_token},
              {"relation_label", arc.relation_label},
              {"head_index", arc.head_index},
              {"child_index", arc.child_index}};
}

DependencyArc arc_from_json(const json& j) {
  DependencyArc arc;
  arc.head_token = j.at("head_token").get<std::string>();
  arc.child_token = j.at("child_token").get<std::string>();
  arc.relation_label = j.value("relation_label", std::string("dep"));
  arc.head_index = j.at("head_index").get<std::size_t>();
  arc.child_index = j.at("child_index").get<std::size_t>();
  return arc;
}

// ---------------------------------------------------------------------------
// ProcessTransport

ProcessTransport::ProcessTransport(std::vector<std::string> argv) {
  if (argv.empty()) throw ConfigError("remote backend command is empty");
  int in_pipe[2];
  int out_pipe[2];
  if (pipe(in_pipe) != 0 || pipe(out_pipe) != 0) {
    throw BackendError(std::string("pipe: ") + std::strerror(errno));
  }
  const pid_t pid = fork();
  if (pid < 0) throw BackendError(std::string("fork: ") + std::strerror(errno));
  if (pid == 0) {
    dup2(in_pipe[0], STDIN_FILENO);
    dup2(out_pipe[1], STDOUT_FILENO);
    close(in_pipe[0]);
    close(in_pipe[1]);
    close(out_pipe[0]);
    close(out_pipe[1]);
    std::vector<char*> args;
    for (auto& a : argv) args.push_back(a.data());
    args.push_back(nullptr);
    execvp(args[0], args.data());
    _exit(127);
  }
  close(in_pipe[0]);
  close(out_pipe[1]);
  pid_ = pid;
  to_child_ = in_pipe[1];
  from_child_ = out_pipe[0];
  // A dead server must surface as a BackendError, not kill us.
  signal(SIGPIPE, SIG_IGN);
}

ProcessTransport::~ProcessTransport() {
  if (to_child_ >= 0) close(to_child_);
  if (from_child_ >= 0) close(from_child_);
  if (pid_ > 0) {
    int status = 0;
    if (waitpid(pid_, &status, WNOHANG) == 0) {
      kill(pid_, SIGTERM);
      waitpid(pid_, &status, 0);
    }
  }
}

std::string ProcessTransport::exchange(const std::string& request_line) {
  std::string out = request_line;
  out += '\n';
  std::size_t written = 0;
  while (written < out.size()) {
    const ssize_t n = write(to_child_, out.data() + written, out.size() - written);
    if (n < 0) {
      if (errno == EINTR) continue;
      throw BackendError(std::string("write to backend server failed: ") + std::strerror(errno));
    }
    written += static_cast<std::size_t>(n);
  }
  for (;;) {
    const std::size_t nl = buffer_.find('\n');
    if (nl != std::string::npos) {
      std::string line = buffer_.substr(0, nl);
      buffer_.erase(0, nl + 1);
      return line;
    }
    char chunk[65536];
    const ssize_t n = read(from_child_, chunk, sizeof(chunk));
    if (n < 0) {
      if (errno == EINTR) continue;
      throw BackendError(std::string("read from backend server failed: ") + std::strerror(errno));
    }
    if (n == 0) throw BackendError("backend server closed its output");
    buffer_.append(chunk, static_cast<std::size_t>(n));
  }
}

std::string LoopbackTransport::exchange(const std::string& request_line) {
  json request;
  try {
    request = json::parse(request_line);
  } catch (const json::parse_error& e) {
    return json{{"error", {{"type", "backend"}, {"message", e.what()}}}}.dump();
  }
  return handle_backend_request(backend_, request).dump();
}

// ---------------------------------------------------------------------------
// RemoteBackend

RemoteBackend::RemoteBackend(std::unique_ptr<Transport> transport, json options)
    : transport_(std::move(transport)) {
  if (!options.empty()) call("init", std::move(options));
  const json d = call("descriptor", json::object());
  descriptor_.name = d.at("name").get<std::string>();
  descriptor_.version = d.at("version").get<std::string>();
  descriptor_.deterministic = d.value("deterministic", false);
  descriptor_.thread_safe = false;
  descriptor_.max_tokens = d.value("max_tokens", std::size_t{0});
}

json RemoteBackend::call(const char* op, json args) const {
  const json request{{"op", op}, {"args", std::move(args)}};
  std::string reply_line;
  {
    std::lock_guard<std::mutex> lock(mu_);
    reply_line = transport_->exchange(request.dump());
  }
  json reply;
  try {
    reply = json::parse(reply_line);
  } catch (const json::parse_error& e) {
    throw BackendError(std::string("malformed reply to ") + op + ": " + e.what());
  }
  if (auto err = reply.find("error"); err != reply.end()) {
    const std::string type = err->value("type", std::string("backend"));
    const std::string message = err->value("message", std::string("unspecified error"));
    if (type == "length") {
      throw LengthError(err->value("length", std::size_t{0}), err->value("limit", std::size_t{0}));
    }
    if (type == "precondition") throw PreconditionError(message);
    throw BackendError(std::string(op) + ": " + message);
  }
  auto result = reply.find("result");
  if (result == reply.end()) throw BackendError(std::string("reply to ") + op + " has no result");
  return *result;
}

BackendDescriptor RemoteBackend::descriptor() const { return descriptor_; }

std::vector<std::string> RemoteBackend::tokenize(std::string_view text) const {
  return call("tokenize", {{"text", text}}).get<std::vector<std::string>>();
}

TokenEmbeddings RemoteBackend::embed_tokens(std::string_view text) const {
  const json r = call("embed_tokens", {{"text", text}});
  TokenEmbeddings out;
  out.tokens = r.at("tokens").get<std::vector<std::string>>();
  out.vectors = r.at("vectors").get<std::vector<std::vector<double>>>();
  if (out.tokens.size() != out.vectors.size()) {
    throw BackendError("embed_tokens reply has misaligned tokens and vectors");
  }
  return out;
}

std::vector<double> RemoteBackend::conditional_token_logprobs(std::string_view source,
                                                              std::string_view target) const {
  return call("conditional_token_logprobs", {{"source", source}, {"target", target}})
      .get<std::vector<double>>();
}

std::vector<double> RemoteBackend::arc_entailment_probs(std::string_view document,
                                                        std::span<const DependencyArc> arcs) const {
  json arr = json::array();
  for (const auto& a : arcs) arr.push_back(arc_to_json(a));
  auto out = call("arc_entailment_probs", {{"document", document}, {"arcs", std::move(arr)}})
                 .get<std::vector<double>>();
  if (out.size() != arcs.size()) throw BackendError("arc_entailment_probs reply length mismatch");
  return out;
}

double RemoteBackend::masked_fill_accuracy(std::string_view prefix, std::string_view sentence,
                                           std::span<const std::size_t> mask_positions) const {
  return call("masked_fill_accuracy",
              {{"prefix", prefix},
               {"sentence", sentence},
               {"mask_positions", std::vector<std::size_t>(mask_positions.begin(),
                                                           mask_positions.end())}})
      .get<double>();
}

std::vector<DependencyArc> RemoteBackend::parse_dependencies(std::string_view summary) const {
  std::vector<DependencyArc> out;
  for (const auto& j : call("parse_dependencies", {{"summary", summary}})) {
    out.push_back(arc_from_json(j));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Server

json handle_backend_request(const Backend& backend, const json& request) {
  try {
    const std::string op = request.at("op").get<std::string>();
    const json& args = request.contains("args") ? request.at("args") : json::object();
    auto str = [&](const char* key) { return args.at(key).get<std::string>(); };
    json result;
    if (op == "init") {
      result = nullptr;
    } else if (op == "descriptor") {
      const BackendDescriptor d = backend.descriptor();
      result = {{"name", d.name},
                {"version", d.version},
                {"deterministic", d.deterministic},
                {"thread_safe", d.thread_safe},
                {"max_tokens", d.max_tokens}};
    } else if (op == "tokenize") {
      result = backend.tokenize(str("text"));
    } else if (op == "embed_tokens") {
      const TokenEmbeddings e = backend.embed_tokens(str("text"));
      result = {{"tokens", e.tokens}, {"vectors", e.vectors}};
    } else if (op == "conditional_token_logprobs") {
      result = backend.conditional_token_logprobs(str("source"), str("target"));
    } else if (op == "arc_entailment_probs") {
      std::vector<DependencyArc> arcs;
      for (const auto& j : args.at("arcs")) arcs.push_back(arc_from_json(j));
      result = backend.arc_entailment_probs(str("document"), arcs);
    } else if (op == "masked_fill_accuracy") {
      const auto positions = args.at("mask_positions").get<std::vector<std::size_t>>();
      result = backend.masked_fill_accuracy(str("prefix"), str("sentence"), positions);
    } else if (op == "parse_dependencies") {
      result = json::array();
      for (const auto& a : backend.parse_dependencies(str("summary"))) {
        result.push_back(arc_to_json(a));
      }
    } else {
      return json{{"error", {{"type", "backend"}, {"message", "unknown op \"" + op + "\""}}}};
    }
    return json{{"result", std::move(result)}};
  } catch (const LengthError& e) {
    return json{{"error",
                 {{"type", "length"},
                  {"message", e.what()},
                  {"length", e.length()},
                  {"limit", e.limit()}}}};
  } catch (const PreconditionError& e) {
    return json{{"error", {{"type", "precondition"}, {"message", e.what()}}}};
  } catch (const std::exception& e) {
    return json{{"error", {{"type", "backend"}, {"message", e.what()}}}};
  }
}

void serve_backend(const Backend& backend, std::istream& in, std::ostream& out) {
  LoopbackTransport loop(backend);
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    out << loop.exchange(line) << '\n';
    out.flush();
  }
}

}  // namespace factfilter
