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

#include "factfilter/scorers.h"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <istream>
#include <memory>
#include <ostream>
#include <set>
#include <sstream>

#include "factfilter/errors.h"
#include "factfilter/parallel.h"
#include "factfilter/text.h"

namespace factfilter {

std::string_view scorer_name(ScorerKind kind) {
  switch (kind) {
    case ScorerKind::kGreedyPrecision:
      return "greedy";
    case ScorerKind::kConditionalLikelihood:
      return "condll";
    case ScorerKind::kArcEntailment:
      return "dae";
  }
  return "greedy";
}

ScorerKind parse_scorer(std::string_view name) {
  if (name == "greedy") return ScorerKind::kGreedyPrecision;
  if (name == "condll") return ScorerKind::kConditionalLikelihood;
  if (name == "dae") return ScorerKind::kArcEntailment;
  throw ConfigError("unknown scorer \"" + std::string(name) + "\" (expected greedy, condll, dae)");
}

std::vector<ScorerKind> parse_scorer_list(std::string_view comma_separated) {
  std::vector<ScorerKind> out;
  for (const auto& name : split_list(comma_separated, ',')) {
    const ScorerKind kind = parse_scorer(name);
    if (std::find(out.begin(), out.end(), kind) != out.end()) {
      throw ConfigError("scorer \"" + name + "\" listed twice");
    }
    out.push_back(kind);
  }
  if (out.empty()) throw ConfigError("no scorers given");
  return out;
}

namespace {

FactualityScore blank_score(const Pair& pair, ScorerKind kind, const Backend& backend) {
  const BackendDescriptor d = backend.descriptor();
  FactualityScore s;
  s.pair_id = pair.id;
  s.scorer = std::string(scorer_name(kind));
  s.backend_name = d.name;
  s.backend_version = d.version;
  return s;
}

double cosine(const std::vector<double>& a, const std::vector<double>& b) {
  if (a.size() != b.size()) throw BackendError("embedding dimensions differ");
  double dot = 0.0;
  double na = 0.0;
  double nb = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    dot += a[i] * b[i];
    na += a[i] * a[i];
    nb += b[i] * b[i];
  }
  if (!(na > 0.0) || !(nb > 0.0)) throw BackendError("embedding with zero norm");
  const double c = dot / (std::sqrt(na) * std::sqrt(nb));
  return std::clamp(c, -1.0, 1.0);
}

double mean(const std::vector<double>& xs) {
  double total = 0.0;
  for (double x : xs) total += x;
  return total / static_cast<double>(xs.size());
}

void require_summary_tokens(const Pair& pair, const Backend& backend) {
  if (backend.tokenize(pair.summary).empty()) {
    throw ScoringError(ScoringError::Kind::kEmptySummary,
                       "summary of pair \"" + pair.id + "\" has no tokens");
  }
}

}  // namespace

FactualityScore score_greedy_precision(const Pair& pair, const Backend& embedder) {
  FactualityScore out = blank_score(pair, ScorerKind::kGreedyPrecision, embedder);
  require_summary_tokens(pair, embedder);
  const TruncatedText doc = truncate_document(embedder, pair.document);
  out.truncated = doc.truncated;

  const TokenEmbeddings summary = embedder.embed_tokens(pair.summary);
  const TokenEmbeddings document = embedder.embed_tokens(doc.text);
  std::vector<double> best;
  best.reserve(summary.vectors.size());
  for (const auto& s : summary.vectors) {
    double m = -1.0;
    for (const auto& d : document.vectors) m = std::max(m, cosine(s, d));
    best.push_back(m);
  }
  out.value = mean(best);
  return out;
}

FactualityScore score_conditional_likelihood(const Pair& pair, const Backend& generator) {
  FactualityScore out = blank_score(pair, ScorerKind::kConditionalLikelihood, generator);
  require_summary_tokens(pair, generator);
  const TruncatedText doc = truncate_document(generator, pair.document);
  out.truncated = doc.truncated;

  const std::vector<double> logprobs = generator.conditional_token_logprobs(doc.text, pair.summary);
  if (logprobs.empty()) {
    throw ScoringError(ScoringError::Kind::kEmptySummary,
                       "backend returned no token log-probabilities for \"" + pair.id + "\"");
  }
  for (double lp : logprobs) {
    if (!(lp <= 0.0)) throw BackendError("log-probability above zero or NaN");
  }
  out.value = mean(logprobs);
  return out;
}

FactualityScore score_arc_entailment(const Pair& pair, const Backend& parser,
                                     const Backend& entailer) {
  FactualityScore out = blank_score(pair, ScorerKind::kArcEntailment, entailer);
  require_summary_tokens(pair, parser);
  const std::vector<DependencyArc> arcs = parser.parse_dependencies(pair.summary);
  if (arcs.empty()) {
    throw ScoringError(ScoringError::Kind::kZeroArcs,
                       "summary of pair \"" + pair.id + "\" has no dependency arcs");
  }
  const TruncatedText doc = truncate_document(entailer, pair.document);
  out.truncated = doc.truncated;
  const std::vector<double> probs = entailer.arc_entailment_probs(doc.text, arcs);
  if (probs.size() != arcs.size()) throw BackendError("arc probability count mismatch");
  out.value = mean(probs);
  return out;
}

FactualityScore score_pair(ScorerKind kind, const Pair& pair, const Backend& backend) {
  switch (kind) {
    case ScorerKind::kGreedyPrecision:
      return score_greedy_precision(pair, backend);
    case ScorerKind::kConditionalLikelihood:
      return score_conditional_likelihood(pair, backend);
    case ScorerKind::kArcEntailment:
      return score_arc_entailment(pair, backend, backend);
  }
  throw ConfigError("unhandled scorer kind");
}

FactualityScore score_pair_or_sentinel(ScorerKind kind, const Pair& pair, const Backend& backend) {
  try {
    return score_pair(kind, pair, backend);
  } catch (const ScoringError& e) {
    FactualityScore s = blank_score(pair, kind, backend);
    s.error = to_string(e.kind());
    return s;
  } catch (const LengthError&) {
    FactualityScore s = blank_score(pair, kind, backend);
    s.error = to_string(ScoringError::Kind::kLength);
    return s;
  } catch (const PreconditionError&) {
    FactualityScore s = blank_score(pair, kind, backend);
    s.error = to_string(ScoringError::Kind::kOther);
    return s;
  }
}

// ---------------------------------------------------------------------------
// ScoreTable

std::vector<std::string> ScoreTable::scorer_names() const {
  std::vector<std::string> out;
  for (const auto& [name, col] : columns) out.push_back(name);
  return out;
}

std::vector<std::string> ScoreTable::pair_ids() const {
  std::vector<std::string> out;
  if (columns.empty()) return out;
  for (const auto& [id, s] : columns.begin()->second) out.push_back(id);
  return out;
}

std::map<std::string, double> ScoreTable::values(std::string_view scorer) const {
  auto it = columns.find(std::string(scorer));
  if (it == columns.end()) {
    throw ConfigError("score table has no column \"" + std::string(scorer) + "\"");
  }
  std::map<std::string, double> out;
  for (const auto& [id, s] : it->second) {
    if (s.value) out.emplace(id, *s.value);
  }
  return out;
}

std::size_t ScoreTable::value_count() const {
  std::size_t n = 0;
  for (const auto& [name, col] : columns) n += col.size();
  return n;
}

void validate_table(const ScoreTable& table) {
  if (table.columns.empty()) throw IntegrityError("score table has no columns");
  const auto& reference = table.columns.begin()->second;
  for (const auto& [name, col] : table.columns) {
    if (col.size() != reference.size() ||
        !std::equal(col.begin(), col.end(), reference.begin(),
                    [](const auto& a, const auto& b) { return a.first == b.first; })) {
      throw IntegrityError("score column \"" + name + "\" covers a different pair set than \"" +
                           table.columns.begin()->first + "\"");
    }
  }
}

void validate_table(const ScoreTable& table, const Corpus& corpus) {
  validate_table(table);
  std::set<std::string> corpus_ids;
  for (const Pair& p : corpus.pairs) corpus_ids.insert(p.id);
  const auto& col = table.columns.begin()->second;
  std::vector<std::string> missing;
  for (const auto& id : corpus_ids) {
    if (!col.count(id)) missing.push_back(id);
  }
  if (!missing.empty()) {
    throw CoverageError("score table is missing corpus pairs", std::move(missing));
  }
  for (const auto& [id, s] : col) {
    if (!corpus_ids.count(id)) {
      throw IntegrityError("score table has pair \"" + id + "\" not in corpus " + corpus.name);
    }
  }
}

// ---------------------------------------------------------------------------
// Corpus driver

namespace {

void check_inputs(const Corpus& corpus, std::span<const ScorerKind> scorers) {
  if (scorers.empty()) throw ConfigError("no scorers requested");
  if (corpus.empty()) throw DomainError("cannot score empty corpus " + corpus.name);
}

ScoreTable assemble(const Corpus& corpus, std::span<const ScorerKind> scorers,
                    std::vector<FactualityScore>& cells) {
  ScoreTable table;
  table.corpus_name = corpus.name;
  for (ScorerKind k : scorers) table.columns[std::string(scorer_name(k))];
  for (auto& cell : cells) {
    auto& col = table.columns[cell.scorer];
    std::string id = cell.pair_id;
    col.emplace(std::move(id), std::move(cell));
  }
  return table;
}

// Wraps backends that forbid concurrent calls when running in parallel.
const Backend& concurrency_safe(const Backend& backend, int threads,
                                std::unique_ptr<SerializedBackend>& holder) {
  if (threads > 1 && !backend.descriptor().thread_safe) {
    holder = std::make_unique<SerializedBackend>(backend);
    return *holder;
  }
  return backend;
}

}  // namespace

ScoreTable score_corpus_serial(const Corpus& corpus, std::span<const ScorerKind> scorers,
                               const Backend& backend) {
  check_inputs(corpus, scorers);
  std::vector<FactualityScore> cells;
  cells.reserve(corpus.size() * scorers.size());
  for (const Pair& pair : corpus.pairs) {
    for (ScorerKind k : scorers) cells.push_back(score_pair_or_sentinel(k, pair, backend));
  }
  return assemble(corpus, scorers, cells);
}

ScoreTable score_corpus(const Corpus& corpus, std::span<const ScorerKind> scorers,
                        const Backend& backend, const ScoringOptions& options) {
  check_inputs(corpus, scorers);
  std::unique_ptr<SerializedBackend> holder;
  const Backend& safe = concurrency_safe(backend, options.threads, holder);
  const std::size_t width = scorers.size();
  std::vector<FactualityScore> cells(corpus.size() * width);
  parallel_for(cells.size(), options.threads, [&](std::size_t i) {
    cells[i] = score_pair_or_sentinel(scorers[i % width], corpus.pairs[i / width], safe);
  });
  return assemble(corpus, scorers, cells);
}

// ---------------------------------------------------------------------------
// Scores file

nlohmann::json score_to_json(const FactualityScore& score) {
  nlohmann::json row{{"pair_id", score.pair_id},
                     {"scorer", score.scorer},
                     {"backend_name", score.backend_name},
                     {"backend_version", score.backend_version},
                     {"truncated", score.truncated}};
  if (score.value) {
    row["value"] = *score.value;
  } else {
    row["value"] = nullptr;
    row["error"] = score.error;
  }
  return row;
}

FactualityScore score_from_json(const nlohmann::json& row) {
  FactualityScore s;
  s.pair_id = row.at("pair_id").get<std::string>();
  s.scorer = row.at("scorer").get<std::string>();
  s.backend_name = row.at("backend_name").get<std::string>();
  s.backend_version = row.at("backend_version").get<std::string>();
  s.truncated = row.value("truncated", false);
  const auto& v = row.at("value");
  if (v.is_null()) {
    s.error = row.value("error", std::string("other"));
  } else {
    s.value = v.get<double>();
    if (!std::isfinite(*s.value)) throw DataError("non-finite score for " + s.pair_id);
  }
  return s;
}

void write_score_row(const FactualityScore& score, std::ostream& out) {
  out << score_to_json(score).dump() << '\n';
}

std::vector<FactualityScore> read_score_rows(std::istream& in) {
  std::vector<FactualityScore> rows;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const bool last_unterminated = in.eof();
    if (!has_content(line)) continue;
    try {
      rows.push_back(score_from_json(nlohmann::json::parse(line)));
    } catch (const std::exception& e) {
      if (last_unterminated) break;
      throw ParseError(std::string("malformed score row: ") + e.what(), line_no);
    }
  }
  return rows;
}

std::vector<FactualityScore> load_score_rows(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open scores file " + path.string());
  return read_score_rows(in);
}

ScoreTable table_from_rows(std::string corpus_name, const std::vector<FactualityScore>& rows,
                           const std::vector<std::string>& scorers) {
  ScoreTable table;
  table.corpus_name = std::move(corpus_name);
  for (const auto& name : scorers) table.columns[name];
  std::map<std::string, std::pair<std::string, std::string>> provenance;
  for (const auto& row : rows) {
    if (!scorers.empty() && std::find(scorers.begin(), scorers.end(), row.scorer) == scorers.end()) {
      continue;
    }
    auto [pit, fresh] =
        provenance.emplace(row.scorer, std::make_pair(row.backend_name, row.backend_version));
    if (!fresh && pit->second != std::make_pair(row.backend_name, row.backend_version)) {
      throw IntegrityError("scorer \"" + row.scorer + "\" mixes backends " + pit->second.first +
                           "/" + pit->second.second + " and " + row.backend_name + "/" +
                           row.backend_version);
    }
    auto& col = table.columns[row.scorer];
    if (!col.emplace(row.pair_id, row).second) {
      throw IntegrityError("duplicate score for pair \"" + row.pair_id + "\" scorer \"" +
                           row.scorer + "\"");
    }
  }
  return table;
}

ScoreTable score_corpus_to_file(const Corpus& corpus, std::span<const ScorerKind> scorers,
                                const Backend& backend, const std::filesystem::path& path,
                                const ScoringOptions& options, ResumeReport* report) {
  check_inputs(corpus, scorers);
  const BackendDescriptor desc = backend.descriptor();

  // Existing rows, dropping an unterminated tail left by an interrupted run.
  std::vector<FactualityScore> existing;
  if (std::filesystem::exists(path)) {
    std::string content;
    {
      std::ifstream in(path, std::ios::binary);
      std::ostringstream ss;
      ss << in.rdbuf();
      content = ss.str();
    }
    const std::size_t keep = content.empty() || content.back() == '\n'
                                 ? content.size()
                                 : content.rfind('\n') == std::string::npos
                                       ? 0
                                       : content.rfind('\n') + 1;
    if (keep != content.size()) {
      content.resize(keep);
      std::filesystem::resize_file(path, keep);
    }
    std::istringstream in(content);
    existing = read_score_rows(in);
  }

  std::set<std::string> wanted;
  for (ScorerKind k : scorers) wanted.insert(std::string(scorer_name(k)));
  std::map<std::pair<std::string, std::string>, FactualityScore> done;
  for (auto& row : existing) {
    if (!wanted.count(row.scorer)) continue;
    if (row.backend_name != desc.name || row.backend_version != desc.version) {
      throw IntegrityError("scores file " + path.string() + " holds " + row.scorer +
                           " scores from backend " + row.backend_name + "/" +
                           row.backend_version + "; refusing to mix with " + desc.name + "/" +
                           desc.version);
    }
    auto key = std::make_pair(row.pair_id, row.scorer);
    done.emplace(std::move(key), std::move(row));
  }

  struct Job {
    const Pair* pair;
    ScorerKind kind;
  };
  std::vector<Job> jobs;
  for (const Pair& p : corpus.pairs) {
    for (ScorerKind k : scorers) {
      if (!done.count({p.id, std::string(scorer_name(k))})) jobs.push_back({&p, k});
    }
  }

  std::unique_ptr<SerializedBackend> holder;
  const Backend& safe = concurrency_safe(backend, options.threads, holder);
  std::ofstream out(path, std::ios::binary | std::ios::app);
  if (!out) throw DataError("cannot append to scores file " + path.string());
  constexpr std::size_t kChunk = 256;
  for (std::size_t begin = 0; begin < jobs.size(); begin += kChunk) {
    const std::size_t end = std::min(jobs.size(), begin + kChunk);
    std::vector<FactualityScore> fresh(end - begin);
    parallel_for(fresh.size(), options.threads, [&](std::size_t i) {
      fresh[i] = score_pair_or_sentinel(jobs[begin + i].kind, *jobs[begin + i].pair, safe);
    });
    for (auto& s : fresh) {
      write_score_row(s, out);
      auto key = std::make_pair(s.pair_id, s.scorer);
      done.emplace(std::move(key), std::move(s));
    }
    out.flush();
    if (!out) throw DataError("write to scores file " + path.string() + " failed");
  }

  if (report) {
    report->scored = jobs.size();
    report->reused = corpus.size() * scorers.size() - jobs.size();
  }
  std::vector<FactualityScore> cells;
  cells.reserve(corpus.size() * scorers.size());
  for (const Pair& p : corpus.pairs) {
    for (ScorerKind k : scorers) cells.push_back(done.at({p.id, std::string(scorer_name(k))}));
  }
  return assemble(corpus, scorers, cells);
}

}  // namespace factfilter
