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

#ifndef FACTFILTER_TESTS_TEST_SUPPORT_H_
#define FACTFILTER_TESTS_TEST_SUPPORT_H_

#include <atomic>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <unistd.h>

#include "factfilter/corpus.h"

namespace factfilter::testing {

inline std::filesystem::path source_dir() { return FACTFILTER_SOURCE_DIR; }
inline std::filesystem::path toy_dir() { return source_dir() / "data" / "toy"; }
inline std::filesystem::path golden_dir() { return source_dir() / "tests" / "golden"; }
inline std::string server_bin() { return FACTFILTER_SERVER_BIN; }

// Removed with its contents on destruction.
class TempDir {
 public:
  TempDir() {
    static std::atomic<int> counter{0};
    path_ = std::filesystem::temp_directory_path() /
            ("factfilter-test-" + std::to_string(::getpid()) + "-" +
             std::to_string(counter.fetch_add(1)));
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  const std::filesystem::path& path() const { return path_; }
  std::string operator/(const std::string& name) const { return (path_ / name).string(); }

 private:
  std::filesystem::path path_;
};

inline std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

inline void write_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  out << text;
}

inline Pair make_pair(std::string id, std::string document, std::string summary,
                      Split split = Split::kTrain) {
  Pair p;
  p.id = std::move(id);
  p.document = std::move(document);
  p.summary = std::move(summary);
  p.split = split;
  return p;
}

}  // namespace factfilter::testing

#endif  // FACTFILTER_TESTS_TEST_SUPPORT_H_
