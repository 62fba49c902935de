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

// Document-summary corpora: the data model, JSONL persistence and the
// descriptive statistics reported for full and filtered corpora.
//
// JSONL record schema, one UTF-8 record per LF-terminated line:
//   {"id": str, "document": str, "summary": str,
//    "split": "train"|"validation"|"test", "meta": object}
// "meta" is optional on input and always written on output.

#ifndef FACTFILTER_CORPUS_H_
#define FACTFILTER_CORPUS_H_

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

namespace factfilter {

enum class Split { kTrain, kValidation, kTest };

std::string_view to_string(Split split);
// Throws DataError for anything other than train/validation/test.
Split parse_split(std::string_view name);

struct Pair {
  std::string id;
  std::string document;
  std::string summary;
  Split split = Split::kTrain;
  nlohmann::json meta = nlohmann::json::object();
};

// Immutable once built; share freely across threads.
struct Corpus {
  std::string name;
  std::vector<Pair> pairs;
  int schema_version = 1;

  std::size_t size() const { return pairs.size(); }
  bool empty() const { return pairs.empty(); }
  const Pair* find(std::string_view id) const;
  std::vector<std::string> ids() const;
};

enum class CorpusFormat { kJsonl };

// Throws IntegrityError on empty/duplicate ids or blank texts.
void validate_corpus(const Corpus& corpus);

// The corpus name defaults to the file stem.
Corpus load_corpus(const std::filesystem::path& path, CorpusFormat format = CorpusFormat::kJsonl);
Corpus read_corpus(std::istream& in, std::string name);

nlohmann::json pair_to_json(const Pair& pair);
void write_corpus(const Corpus& corpus, std::ostream& out);
void save_corpus(const Corpus& corpus, const std::filesystem::path& path);

// Pairs of the given split, original order kept. std::nullopt keeps all.
Corpus select_split(const Corpus& corpus, std::optional<Split> split);

struct CorpusStats {
  std::size_t n_pairs = 0;
  double mean_doc_words = 0.0;
  double mean_sum_words = 0.0;
  std::map<Split, std::size_t> per_split_counts;

  // Which splits contributed, e.g. "train" or "train+validation+test".
  std::string splits_label() const;
};

// Throws DomainError on an empty corpus.
CorpusStats corpus_stats(const Corpus& corpus);

// One row shaped like a dataset statistics table:
//   corpus,selection,splits,n_samples,selection_ratio,mean_doc_words,mean_summary_words
// selection_ratio is "*" for the unfiltered row.
std::string stats_csv_header();
std::string stats_csv_row(std::string_view corpus_name, std::string_view selection,
                          const CorpusStats& stats, std::optional<double> selection_ratio);

}  // namespace factfilter

#endif  // FACTFILTER_CORPUS_H_
