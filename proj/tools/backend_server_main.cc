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

// Serves the mock backend over the line-delimited JSON protocol on
// stdin/stdout. Reference peer for the remote adapter.

#include <iostream>

#include "CLI11.hpp"
#include "factfilter/mock_backend.h"
#include "factfilter/remote_backend.h"

int main(int argc, char** argv) {
  factfilter::MockOptions options;
  CLI::App app{"Mock backend server speaking the remote backend protocol",
               "factfilter_backend_server"};
  app.add_option("--dim", options.dim, "Embedding dimension")->check(CLI::PositiveNumber);
  app.add_option("--seed", options.seed, "Embedding seed");
  app.add_option("--max-tokens", options.max_tokens, "Input length limit")
      ->check(CLI::PositiveNumber);
  CLI11_PARSE(app, argc, argv);

  std::ios::sync_with_stdio(false);
  const factfilter::MockBackend backend(options);
  factfilter::serve_backend(backend, std::cin, std::cout);
  return 0;
}
