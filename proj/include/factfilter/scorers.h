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

// Factual-consistency scorers for document-summary pairs and the driver
// that scores whole corpora.
//
//   greedy  greedy-matching precision of summary token embeddings against
//           the source document: mean over summary tokens of the best
//           cosine similarity to any document token. In [-1, 1].
//   condll  mean per-token log-probability of the summary conditioned on
//           the document. <= 0.
//   dae     mean factual-class probability over the summary's dependency
//           arcs, each judged against the document. In [0, 1].
//
// Documents longer than the backend limit are truncated (flagged on the
// score); summaries are never truncated.

#ifndef FACTFILTER_SCORERS_H_
#define FACTFILTER_SCORERS_H_

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "factfilter/backend.h"
#include "factfilter/corpus.h"
#include "json.hpp"

namespace factfilter {

enum class ScorerKind { kGreedyPrecision, kConditionalLikelihood, kArcEntailment };

// "greedy", "condll", "dae".
std::string_view scorer_name(ScorerKind kind);
// Accepts the short names above; throws ConfigError otherwise.
ScorerKind parse_scorer(std::string_view name);
std::vector<ScorerKind> parse_scorer_list(std::string_view comma_separated);

// One (pair, scorer) cell. A missing value marks a sentinel row: the pair
// could not be scored and `error` names why. Sentinels are excluded by
// every downstream consumer.
struct FactualityScore {
  std::string pair_id;
  std::string scorer;
  std::string backend_name;
  std::string backend_version;
  std::optional<double> value;
  bool truncated = false;
  std::string error;

  bool is_sentinel() const { return !value.has_value(); }
  friend bool operator==(const FactualityScore&, const FactualityScore&) = default;
};

// Throw ScoringError (kEmptySummary / kZeroArcs) or LengthError.
FactualityScore score_greedy_precision(const Pair& pair, const Backend& embedder);
FactualityScore score_conditional_likelihood(const Pair& pair, const Backend& generator);
FactualityScore score_arc_entailment(const Pair& pair, const Backend& parser,
                                     const Backend& entailer);

FactualityScore score_pair(ScorerKind kind, const Pair& pair, const Backend& backend);
// As score_pair, but per-pair failures become sentinel rows.
FactualityScore score_pair_or_sentinel(ScorerKind kind, const Pair& pair, const Backend& backend);

struct ScoreTable {
  std::string corpus_name;
  // scorer name -> pair id -> score
  std::map<std::string, std::map<std::string, FactualityScore>> columns;

  std::vector<std::string> scorer_names() const;
  // Pair ids of the first column; all columns share them once validated.
  std::vector<std::string> pair_ids() const;
  // Non-sentinel values of one column. Throws ConfigError for unknown scorers.
  std::map<std::string, double> values(std::string_view scorer) const;
  std::size_t value_count() const;

  friend bool operator==(const ScoreTable&, const ScoreTable&) = default;
};

// Every column covers exactly the corpus ids (or, without a corpus, the
// same id set as every other column). Throws IntegrityError.
void validate_table(const ScoreTable& table, const Corpus& corpus);
void validate_table(const ScoreTable& table);

struct ScoringOptions {
  int threads = 1;
};

// Throws before scoring: ConfigError for an empty scorer list, DomainError
// for an empty corpus.
// The result does not depend on the thread count.
ScoreTable score_corpus(const Corpus& corpus, std::span<const ScorerKind> scorers,
                        const Backend& backend, const ScoringOptions& options = {});
// Single-threaded reference implementation.
ScoreTable score_corpus_serial(const Corpus& corpus, std::span<const ScorerKind> scorers,
                               const Backend& backend);

// Scores file: JSONL rows
//   {"pair_id", "scorer", "backend_name", "backend_version", "value", "truncated"}
// with "value": null plus "error" on sentinel rows.
nlohmann::json score_to_json(const FactualityScore& score);
FactualityScore score_from_json(const nlohmann::json& row);
void write_score_row(const FactualityScore& score, std::ostream& out);

// A final line without a terminating newline that does not parse is treated
// as an interrupted write and skipped.
std::vector<FactualityScore> read_score_rows(std::istream& in);
std::vector<FactualityScore> load_score_rows(const std::filesystem::path& path);

// Builds a table; duplicate (pair, scorer) keys and mixed backend
// descriptors within a column are IntegrityErrors. `scorers` restricts the
// columns kept (empty keeps all).
ScoreTable table_from_rows(std::string corpus_name, const std::vector<FactualityScore>& rows,
                           const std::vector<std::string>& scorers = {});

struct ResumeReport {
  std::size_t reused = 0;
  std::size_t scored = 0;
};

// Resumable corpus scoring into an append-only scores file. Existing
// (pair, scorer) rows are kept; missing ones are scored chunk by chunk and
// appended in corpus order, so an interrupted run can be restarted.
ScoreTable score_corpus_to_file(const Corpus& corpus, std::span<const ScorerKind> scorers,
                                const Backend& backend, const std::filesystem::path& path,
                                const ScoringOptions& options = {},
                                ResumeReport* report = nullptr);

}  // namespace factfilter

#endif  // FACTFILTER_SCORERS_H_
