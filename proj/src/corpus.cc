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

#include "factfilter/corpus.h"

#include <fstream>
#include <istream>
#include <ostream>
#include <unordered_map>
#include <unordered_set>

#include "factfilter/csv.h"
#include "factfilter/errors.h"
#include "factfilter/text.h"

namespace factfilter {

std::string_view to_string(Split split) {
  switch (split) {
    case Split::kTrain:
      return "train";
    case Split::kValidation:
      return "validation";
    case Split::kTest:
      return "test";
  }
  return "train";
}

Split parse_split(std::string_view name) {
  if (name == "train") return Split::kTrain;
  if (name == "validation") return Split::kValidation;
  if (name == "test") return Split::kTest;
  throw DataError("unknown split \"" + std::string(name) + "\"");
}

const Pair* Corpus::find(std::string_view id) const {
  for (const Pair& p : pairs) {
    if (p.id == id) return &p;
  }
  return nullptr;
}

std::vector<std::string> Corpus::ids() const {
  std::vector<std::string> out;
  out.reserve(pairs.size());
  for (const Pair& p : pairs) out.push_back(p.id);
  return out;
}

void validate_corpus(const Corpus& corpus) {
  std::unordered_set<std::string_view> seen;
  for (const Pair& p : corpus.pairs) {
    if (p.id.empty()) throw IntegrityError("pair with empty id in corpus " + corpus.name);
    if (!seen.insert(p.id).second) throw IntegrityError("duplicate pair id \"" + p.id + "\"");
    if (!has_content(p.document)) throw IntegrityError("pair \"" + p.id + "\" has a blank document");
    if (!has_content(p.summary)) throw IntegrityError("pair \"" + p.id + "\" has a blank summary");
  }
}

namespace {

std::string required_string(const nlohmann::json& record, const char* key, std::size_t line) {
  auto it = record.find(key);
  if (it == record.end()) throw ParseError(std::string("missing field \"") + key + "\"", line);
  if (!it->is_string()) throw ParseError(std::string("field \"") + key + "\" is not a string", line);
  return it->get<std::string>();
}

}  // namespace

Corpus read_corpus(std::istream& in, std::string name) {
  Corpus corpus;
  corpus.name = std::move(name);
  std::unordered_map<std::string, std::size_t> first_line;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!has_content(line)) continue;
    nlohmann::json record;
    try {
      record = nlohmann::json::parse(line);
    } catch (const nlohmann::json::parse_error& e) {
      throw ParseError(std::string("malformed JSON: ") + e.what(), line_no);
    }
    if (!record.is_object()) throw ParseError("record is not a JSON object", line_no);

    Pair pair;
    pair.id = required_string(record, "id", line_no);
    pair.document = required_string(record, "document", line_no);
    pair.summary = required_string(record, "summary", line_no);
    try {
      pair.split = parse_split(required_string(record, "split", line_no));
    } catch (const ParseError&) {
      throw;
    } catch (const DataError& e) {
      throw ParseError(e.what(), line_no);
    }
    if (auto it = record.find("meta"); it != record.end()) {
      if (!it->is_object()) throw ParseError("field \"meta\" is not an object", line_no);
      pair.meta = *it;
    }
    if (pair.id.empty()) throw ParseError("empty id", line_no);
    if (!has_content(pair.document)) throw ParseError("blank document", line_no);
    if (!has_content(pair.summary)) throw ParseError("blank summary", line_no);

    auto [it, inserted] = first_line.emplace(pair.id, line_no);
    if (!inserted) {
      throw IntegrityError("duplicate pair id \"" + pair.id + "\" on lines " +
                           std::to_string(it->second) + " and " + std::to_string(line_no));
    }
    corpus.pairs.push_back(std::move(pair));
  }
  return corpus;
}

Corpus load_corpus(const std::filesystem::path& path, CorpusFormat /*format*/) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open corpus file " + path.string());
  return read_corpus(in, path.stem().string());
}

nlohmann::json pair_to_json(const Pair& pair) {
  return nlohmann::json{{"id", pair.id},
                        {"document", pair.document},
                        {"summary", pair.summary},
                        {"split", std::string(to_string(pair.split))},
                        {"meta", pair.meta}};
}

void write_corpus(const Corpus& corpus, std::ostream& out) {
  for (const Pair& p : corpus.pairs) out << pair_to_json(p).dump() << '\n';
}

void save_corpus(const Corpus& corpus, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot write corpus file " + path.string());
  write_corpus(corpus, out);
}

Corpus select_split(const Corpus& corpus, std::optional<Split> split) {
  Corpus out;
  out.name = corpus.name;
  out.schema_version = corpus.schema_version;
  for (const Pair& p : corpus.pairs) {
    if (!split || p.split == *split) out.pairs.push_back(p);
  }
  return out;
}

std::string CorpusStats::splits_label() const {
  std::string label;
  for (const auto& [split, count] : per_split_counts) {
    if (count == 0) continue;
    if (!label.empty()) label += '+';
    label += to_string(split);
  }
  return label;
}

CorpusStats corpus_stats(const Corpus& corpus) {
  if (corpus.empty()) throw DomainError("corpus_stats on empty corpus " + corpus.name);
  CorpusStats stats;
  stats.n_pairs = corpus.size();
  std::size_t doc_words = 0;
  std::size_t sum_words = 0;
  for (const Pair& p : corpus.pairs) {
    doc_words += word_count(p.document);
    sum_words += word_count(p.summary);
    ++stats.per_split_counts[p.split];
  }
  // Integer totals keep the means independent of pair order.
  stats.mean_doc_words = static_cast<double>(doc_words) / static_cast<double>(stats.n_pairs);
  stats.mean_sum_words = static_cast<double>(sum_words) / static_cast<double>(stats.n_pairs);
  return stats;
}

std::string stats_csv_header() {
  return csv_line({"corpus", "selection", "splits", "n_samples", "selection_ratio",
                   "mean_doc_words", "mean_summary_words"});
}

std::string stats_csv_row(std::string_view corpus_name, std::string_view selection,
                          const CorpusStats& stats, std::optional<double> selection_ratio) {
  return csv_line({std::string(corpus_name), std::string(selection), stats.splits_label(),
                   std::to_string(stats.n_pairs),
                   selection_ratio ? format_real(*selection_ratio) : std::string("*"),
                   format_real(stats.mean_doc_words), format_real(stats.mean_sum_words)});
}

}  // namespace factfilter
