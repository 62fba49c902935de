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

// Quality metrics for generated summaries and the test-split evaluator.

#ifndef FACTFILTER_METRICS_H_
#define FACTFILTER_METRICS_H_

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
#include "factfilter/filtration.h"

namespace factfilter {

struct RougeScore {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
};

// Lowercased (ASCII) whitespace tokens; no stemming or stopword removal.
std::vector<std::string> rouge_tokens(std::string_view text);

// Clipped bigram overlap. P = overlap / candidate bigrams,
// R = overlap / reference bigrams, F = 2PR / (P + R) or 0.
RougeScore rouge2(std::string_view candidate, std::string_view reference);

struct BlancScore {
  double value = 0.0;
  std::size_t n_sentences = 0;  // sentences with at least one masked token
  std::size_t n_masked_tokens = 0;
};

// Filler token repeated to the summary's token count for the baseline pass.
inline constexpr std::string_view kBlancFillerToken = ".";

// Positions i with i % 4 == 0 whose token has at least 4 code points.
std::vector<std::size_t> blanc_mask_positions(const std::vector<std::string>& tokens);

// Mean over document sentences of
//   fill_accuracy(summary prefix) - fill_accuracy(filler prefix)
// on the same masked positions. Sentences without maskable tokens are
// skipped; a document with none at all is a ScoringError, and a document
// that yields no sentence is a DomainError.
BlancScore blanc_help(std::string_view document, std::string_view summary, const Backend& backend);

enum class Metric { kGreedy, kCondll, kDae, kBlanc, kRouge2 };
std::string_view metric_name(Metric metric);
Metric parse_metric(std::string_view name);
std::vector<Metric> parse_metric_list(std::string_view comma_separated);
// Reference-based metrics are restricted to the manifest's kept pairs.
bool is_reference_based(Metric metric);

struct EvalRow {
  std::string pair_id;
  std::string metric;
  std::optional<double> value;
  std::string error;
};

struct MetricSummary {
  std::size_t n = 0;  // pairs with a value
  std::size_t n_failed = 0;
  double mean = 0.0;
};

struct EvalReport {
  std::vector<std::string> metric_order;
  std::vector<EvalRow> rows;  // grouped by metric, corpus order inside
  std::map<std::string, MetricSummary> aggregates;

  // metric -> pair id -> value, failures excluded.
  std::map<std::string, std::map<std::string, double>> values() const;
};

struct EvalOptions {
  int threads = 1;
};

// Scores generated summaries of the corpus's test split. ROUGE-2 runs on
// test pairs kept by the manifest (all test pairs without one); every other
// metric runs on the whole test split. `backend` is required for any metric
// but rouge2. Missing generated summaries are a CoverageError.
EvalReport evaluate_outputs(const std::map<std::string, std::string>& generated,
                            const Corpus& corpus, const FilterManifest* manifest,
                            std::span<const Metric> metrics, const Backend* backend,
                            const EvalOptions& options = {});

// JSONL {"id": str, "summary": str}.
std::map<std::string, std::string> read_generated(std::istream& in);
std::map<std::string, std::string> load_generated(const std::filesystem::path& path);

// pair_id,metric,value,error
void write_eval_csv(const EvalReport& report, std::ostream& out);
EvalReport read_eval_csv(std::istream& in);
EvalReport load_eval_csv(const std::filesystem::path& path);

// Aggregate row laid out like a results table:
//   label,greedy,condll,dae,blanc,rouge2,n_greedy,...,n_rouge2
// ROUGE-2 is reported as F1 x 100. Metrics not evaluated are left blank.
std::string eval_summary_header();
std::string eval_summary_row(const EvalReport& report, std::string_view label);

}  // namespace factfilter

#endif  // FACTFILTER_METRICS_H_
