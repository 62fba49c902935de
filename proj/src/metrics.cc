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

#include "factfilter/metrics.h"

#include <algorithm>
#include <fstream>
#include <istream>
#include <ostream>
#include <set>
#include <unordered_map>
#include <unordered_set>

#include "factfilter/csv.h"
#include "factfilter/errors.h"
#include "factfilter/parallel.h"
#include "factfilter/scorers.h"
#include "factfilter/text.h"

namespace factfilter {

std::vector<std::string> rouge_tokens(std::string_view text) {
  const std::string lower = ascii_lower(text);
  const auto words = split_whitespace(lower);
  return {words.begin(), words.end()};
}

namespace {

std::unordered_map<std::string, int> bigram_counts(const std::vector<std::string>& tokens) {
  std::unordered_map<std::string, int> counts;
  for (std::size_t i = 0; i + 1 < tokens.size(); ++i) {
    // Tokens never contain whitespace, so a space is an unambiguous joiner.
    ++counts[tokens[i] + ' ' + tokens[i + 1]];
  }
  return counts;
}

}  // namespace

RougeScore rouge2(std::string_view candidate, std::string_view reference) {
  const auto cand_tokens = rouge_tokens(candidate);
  const auto ref_tokens = rouge_tokens(reference);
  RougeScore s;
  if (cand_tokens.size() < 2 || ref_tokens.size() < 2) return s;
  const auto cand = bigram_counts(cand_tokens);
  const auto ref = bigram_counts(ref_tokens);
  long overlap = 0;
  for (const auto& [bigram, count] : cand) {
    auto it = ref.find(bigram);
    if (it != ref.end()) overlap += std::min(count, it->second);
  }
  s.precision = static_cast<double>(overlap) / static_cast<double>(cand_tokens.size() - 1);
  s.recall = static_cast<double>(overlap) / static_cast<double>(ref_tokens.size() - 1);
  if (s.precision + s.recall > 0.0) {
    s.f1 = 2.0 * s.precision * s.recall / (s.precision + s.recall);
  }
  return s;
}

std::vector<std::size_t> blanc_mask_positions(const std::vector<std::string>& tokens) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < tokens.size(); i += 4) {
    if (codepoint_count(tokens[i]) >= 4) out.push_back(i);
  }
  return out;
}

BlancScore blanc_help(std::string_view document, std::string_view summary, const Backend& backend) {
  const auto summary_tokens = backend.tokenize(summary);
  if (summary_tokens.empty()) {
    throw ScoringError(ScoringError::Kind::kEmptySummary, "BLANC: empty summary");
  }
  const auto sentences = split_sentences(document);
  if (sentences.empty()) throw DomainError("BLANC: document has no sentences");

  const std::vector<std::string> filler_tokens(summary_tokens.size(),
                                               std::string(kBlancFillerToken));
  const std::string filler = join(filler_tokens, " ");

  BlancScore score;
  double total = 0.0;
  for (std::string_view sentence : sentences) {
    const auto positions = blanc_mask_positions(backend.tokenize(sentence));
    if (positions.empty()) continue;
    const double helped = backend.masked_fill_accuracy(summary, sentence, positions);
    const double base = backend.masked_fill_accuracy(filler, sentence, positions);
    total += helped - base;
    ++score.n_sentences;
    score.n_masked_tokens += positions.size();
  }
  if (score.n_sentences == 0) {
    throw ScoringError(ScoringError::Kind::kOther, "BLANC: document has no maskable tokens");
  }
  score.value = total / static_cast<double>(score.n_sentences);
  return score;
}

// ---------------------------------------------------------------------------

std::string_view metric_name(Metric metric) {
  switch (metric) {
    case Metric::kGreedy:
      return "greedy";
    case Metric::kCondll:
      return "condll";
    case Metric::kDae:
      return "dae";
    case Metric::kBlanc:
      return "blanc";
    case Metric::kRouge2:
      return "rouge2";
  }
  return "rouge2";
}

Metric parse_metric(std::string_view name) {
  for (Metric m : {Metric::kGreedy, Metric::kCondll, Metric::kDae, Metric::kBlanc,
                   Metric::kRouge2}) {
    if (metric_name(m) == name) return m;
  }
  throw ConfigError("unknown metric \"" + std::string(name) +
                    "\" (expected greedy, condll, dae, blanc, rouge2)");
}

std::vector<Metric> parse_metric_list(std::string_view comma_separated) {
  std::vector<Metric> out;
  for (const auto& name : split_list(comma_separated, ',')) {
    const Metric m = parse_metric(name);
    if (std::find(out.begin(), out.end(), m) != out.end()) {
      throw ConfigError("metric \"" + name + "\" listed twice");
    }
    out.push_back(m);
  }
  if (out.empty()) throw ConfigError("no metrics given");
  return out;
}

bool is_reference_based(Metric metric) { return metric == Metric::kRouge2; }

std::map<std::string, std::map<std::string, double>> EvalReport::values() const {
  std::map<std::string, std::map<std::string, double>> out;
  for (const auto& m : metric_order) out[m];
  for (const auto& row : rows) {
    if (row.value) out[row.metric][row.pair_id] = *row.value;
  }
  return out;
}

namespace {

EvalRow evaluate_one(Metric metric, const Pair& reference, const std::string& generated,
                     const Backend* backend) {
  EvalRow row;
  row.pair_id = reference.id;
  row.metric = std::string(metric_name(metric));
  if (metric == Metric::kRouge2) {
    row.value = rouge2(generated, reference.summary).f1;
    return row;
  }
  try {
    if (metric == Metric::kBlanc) {
      row.value = blanc_help(reference.document, generated, *backend).value;
      return row;
    }
    Pair candidate = reference;
    candidate.summary = generated;
    const ScorerKind kind = metric == Metric::kGreedy   ? ScorerKind::kGreedyPrecision
                            : metric == Metric::kCondll ? ScorerKind::kConditionalLikelihood
                                                        : ScorerKind::kArcEntailment;
    const FactualityScore s = score_pair_or_sentinel(kind, candidate, *backend);
    row.value = s.value;
    row.error = s.error;
  } catch (const ScoringError& e) {
    row.error = to_string(e.kind());
  } catch (const LengthError&) {
    row.error = to_string(ScoringError::Kind::kLength);
  }
  return row;
}

}  // namespace

EvalReport evaluate_outputs(const std::map<std::string, std::string>& generated,
                            const Corpus& corpus, const FilterManifest* manifest,
                            std::span<const Metric> metrics, const Backend* backend,
                            const EvalOptions& options) {
  if (metrics.empty()) throw ConfigError("no metrics requested");
  for (Metric m : metrics) {
    if (!is_reference_based(m) && backend == nullptr) {
      throw ConfigError("metric " + std::string(metric_name(m)) + " needs a backend");
    }
  }
  std::vector<const Pair*> test;
  for (const Pair& p : corpus.pairs) {
    if (p.split == Split::kTest) test.push_back(&p);
  }
  if (test.empty()) throw DomainError("corpus " + corpus.name + " has no test split");

  std::vector<std::string> missing;
  for (const Pair* p : test) {
    if (!generated.count(p->id)) missing.push_back(p->id);
  }
  if (!missing.empty()) {
    throw CoverageError("generated summaries missing for test pairs", std::move(missing));
  }

  std::unordered_set<std::string_view> kept;
  if (manifest) {
    if (manifest->corpus_name != corpus.name) {
      throw IntegrityError("manifest is for corpus \"" + manifest->corpus_name + "\", not \"" +
                           corpus.name + "\"");
    }
    kept.insert(manifest->kept_ids.begin(), manifest->kept_ids.end());
  }

  struct Job {
    Metric metric;
    const Pair* pair;
  };
  std::vector<Job> jobs;
  EvalReport report;
  for (Metric m : metrics) {
    report.metric_order.emplace_back(metric_name(m));
    for (const Pair* p : test) {
      if (manifest && is_reference_based(m) && !kept.count(p->id)) continue;
      jobs.push_back({m, p});
    }
  }

  std::unique_ptr<SerializedBackend> holder;
  const Backend* safe = backend;
  if (backend && options.threads > 1 && !backend->descriptor().thread_safe) {
    holder = std::make_unique<SerializedBackend>(*backend);
    safe = holder.get();
  }
  report.rows.resize(jobs.size());
  parallel_for(jobs.size(), options.threads, [&](std::size_t i) {
    report.rows[i] = evaluate_one(jobs[i].metric, *jobs[i].pair, generated.at(jobs[i].pair->id),
                                  safe);
  });

  for (const auto& name : report.metric_order) report.aggregates[name];
  std::map<std::string, double> totals;
  for (const auto& row : report.rows) {
    auto& agg = report.aggregates[row.metric];
    if (row.value) {
      ++agg.n;
      totals[row.metric] += *row.value;
    } else {
      ++agg.n_failed;
    }
  }
  for (auto& [name, agg] : report.aggregates) {
    if (agg.n) agg.mean = totals[name] / static_cast<double>(agg.n);
  }
  return report;
}

// ---------------------------------------------------------------------------
// I/O

std::map<std::string, std::string> read_generated(std::istream& in) {
  std::map<std::string, std::string> out;
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
    if (!record.is_object() || !record.contains("id") || !record.contains("summary") ||
        !record["id"].is_string() || !record["summary"].is_string()) {
      throw ParseError("generated record needs string fields id and summary", line_no);
    }
    const std::string id = record["id"].get<std::string>();
    if (!out.emplace(id, record["summary"].get<std::string>()).second) {
      throw IntegrityError("duplicate generated summary for \"" + id + "\"");
    }
  }
  return out;
}

std::map<std::string, std::string> load_generated(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open generated summaries " + path.string());
  return read_generated(in);
}

void write_eval_csv(const EvalReport& report, std::ostream& out) {
  out << csv_line({"pair_id", "metric", "value", "error"});
  for (const auto& row : report.rows) {
    out << csv_line({row.pair_id, row.metric, row.value ? format_real_exact(*row.value) : std::string(),
                     row.error});
  }
}

EvalReport read_eval_csv(std::istream& in) {
  const auto rows = read_csv(in);
  if (rows.empty() || rows[0] != std::vector<std::string>{"pair_id", "metric", "value", "error"}) {
    throw ParseError("evaluation report header must be pair_id,metric,value,error", 1);
  }
  EvalReport report;
  std::map<std::string, double> totals;
  for (std::size_t i = 1; i < rows.size(); ++i) {
    const auto& r = rows[i];
    if (r.empty()) continue;
    if (r.size() != 4) throw ParseError("evaluation row needs 4 fields", i + 1);
    EvalRow row{r[0], r[1], std::nullopt, r[3]};
    if (!r[2].empty()) {
      try {
        std::size_t used = 0;
        row.value = std::stod(r[2], &used);
        if (used != r[2].size()) throw std::invalid_argument(r[2]);
      } catch (const std::exception&) {
        throw ParseError("bad metric value \"" + r[2] + "\"", i + 1);
      }
    }
    if (std::find(report.metric_order.begin(), report.metric_order.end(), row.metric) ==
        report.metric_order.end()) {
      report.metric_order.push_back(row.metric);
    }
    auto& agg = report.aggregates[row.metric];
    if (row.value) {
      ++agg.n;
      totals[row.metric] += *row.value;
    } else {
      ++agg.n_failed;
    }
    report.rows.push_back(std::move(row));
  }
  for (auto& [name, agg] : report.aggregates) {
    if (agg.n) agg.mean = totals[name] / static_cast<double>(agg.n);
  }
  return report;
}

EvalReport load_eval_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open evaluation report " + path.string());
  return read_eval_csv(in);
}

namespace {
constexpr Metric kSummaryColumns[] = {Metric::kGreedy, Metric::kCondll, Metric::kDae,
                                      Metric::kBlanc, Metric::kRouge2};
}

std::string eval_summary_header() {
  std::vector<std::string> fields{"label"};
  for (Metric m : kSummaryColumns) fields.emplace_back(metric_name(m));
  for (Metric m : kSummaryColumns) fields.push_back("n_" + std::string(metric_name(m)));
  return csv_line(fields);
}

std::string eval_summary_row(const EvalReport& report, std::string_view label) {
  std::vector<std::string> fields{std::string(label)};
  for (Metric m : kSummaryColumns) {
    auto it = report.aggregates.find(std::string(metric_name(m)));
    if (it == report.aggregates.end() || it->second.n == 0) {
      fields.emplace_back();
    } else {
      const double scale = m == Metric::kRouge2 ? 100.0 : 1.0;
      fields.push_back(format_real(it->second.mean * scale));
    }
  }
  for (Metric m : kSummaryColumns) {
    auto it = report.aggregates.find(std::string(metric_name(m)));
    fields.push_back(it == report.aggregates.end() ? std::string()
                                                   : std::to_string(it->second.n));
  }
  return csv_line(fields);
}

}  // namespace factfilter
