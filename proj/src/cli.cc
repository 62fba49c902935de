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

#include "factfilter/cli.h"

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <sstream>

#include "CLI11.hpp"
#include "factfilter/backend.h"
#include "factfilter/corpus.h"
#include "factfilter/csv.h"
#include "factfilter/errors.h"
#include "factfilter/experiments.h"
#include "factfilter/filtration.h"
#include "factfilter/frankval.h"
#include "factfilter/metrics.h"
#include "factfilter/scorers.h"
#include "factfilter/text.h"
#include "json.hpp"

namespace factfilter {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

// Every option of every subcommand binds into one of these.
struct RunConfig {
  std::string config_path;
  int threads = 1;
  std::string backend = "mock";
  bool quiet = false;

  std::string in;
  std::string out;
  std::string name;
  std::string scores;
  std::string scorers = "greedy,condll,dae";
  std::string filter_scorers;
  std::string corpus;
  std::vector<std::string> corpora;
  std::vector<std::string> manifests;
  std::string corpus_name;
  std::string manifest;
  std::string filtered_out;
  double q = kDefaultDropFraction;
  std::string split = "all";
  std::string annotations;
  std::string columns;
  std::string covariates = "system";
  std::string mode = "pearson";
  double min_coverage = 0.95;
  std::string thresholds = "0.1,0.25,0.4,0.55";
  std::string strategies;
  std::uint64_t seed = 0;
  bool proxy_blanc = true;
  std::string generated;
  std::string metrics = "greedy,condll,dae,blanc,rouge2";
  std::string summary_out;
  std::string label = "selection";
  std::string a;
  std::string b;
  std::string table_out;
  std::string label_a = "a";
  std::string label_b = "b";
};

class Logger {
 public:
  Logger(std::ostream& out, bool quiet, std::string command)
      : out_(out), quiet_(quiet), command_(std::move(command)) {}
  void info(const std::string& message) const {
    if (!quiet_) out_ << "factfilter " << command_ << ": " << message << '\n';
  }
  void error(const std::string& message) const {
    out_ << "factfilter " << command_ << ": error: " << message << '\n';
  }

 private:
  std::ostream& out_;
  bool quiet_;
  std::string command_;
};

std::ofstream open_output(const std::string& path) {
  const fs::path p(path);
  if (p.has_parent_path()) {
    std::error_code ec;
    fs::create_directories(p.parent_path(), ec);
  }
  std::ofstream out(p, std::ios::binary | std::ios::trunc);
  if (!out) throw DataError("cannot write " + path);
  return out;
}

void require(const std::string& value, const char* option) {
  if (value.empty()) throw ConfigError(std::string("option --") + option + " is required");
}

std::vector<double> parse_real_list(const std::string& text, const char* option) {
  std::vector<double> out;
  for (const auto& piece : split_list(text, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stod(piece, &used));
      if (used != piece.size()) throw std::invalid_argument(piece);
    } catch (const std::exception&) {
      throw ConfigError(std::string("--") + option + ": not a number: " + piece);
    }
  }
  return out;
}

std::vector<std::string> scorer_list(const std::string& text) {
  std::vector<std::string> out;
  for (ScorerKind k : parse_scorer_list(text)) out.emplace_back(scorer_name(k));
  return out;
}

std::unique_ptr<Backend> make_backend(const std::string& id) {
  BackendRegistry registry = BackendRegistry::with_builtins();
  if (const char* path = std::getenv(kBackendRegistryEnv); path && *path) {
    registry.load_file(path);
  }
  return registry.create(id);
}

// Command-line values win; the run file fills in only options left unset.
void apply_run_file(CLI::App& app, CLI::App& sub, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open run file " + path);
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError("run file " + path + " is not valid JSON: " + e.what());
  }
  if (!j.is_object()) throw ConfigError("run file " + path + " must hold a JSON object");
  for (const auto& [key, value] : j.items()) {
    if (key == "command") {
      if (!value.is_string() || value.get<std::string>() != sub.get_name()) {
        throw ConfigError("run file is for command " + value.dump() + ", not " + sub.get_name());
      }
      continue;
    }
    if (key == "config") continue;
    CLI::Option* opt = sub.get_option_no_throw("--" + key);
    if (!opt) opt = app.get_option_no_throw("--" + key);
    if (!opt) throw ConfigError("run file key \"" + key + "\" is not an option of " +
                                sub.get_name());
    if (opt->count() > 0) continue;
    auto as_text = [](const json& v) {
      return v.is_string() ? v.get<std::string>() : v.dump();
    };
    std::vector<std::string> results;
    if (value.is_array()) {
      for (const auto& item : value) results.push_back(as_text(item));
      if (opt->get_items_expected_max() <= 1) results = {join(results, ",")};
    } else {
      results.push_back(as_text(value));
    }
    try {
      opt->add_result(results);
      opt->run_callback();
    } catch (const CLI::Error& e) {
      throw ConfigError("run file key \"" + key + "\": " + e.what());
    }
  }
}

json config_echo(const CLI::App& app, const CLI::App& sub) {
  json echo = json::object();
  echo["command"] = sub.get_name();
  auto add = [&](const CLI::Option* opt) {
    const std::string name = opt->get_single_name();
    if (name.empty() || name == "help" || name == "config") return;
    const auto& results = opt->results();
    if (opt->get_items_expected_max() > 1) {
      echo[name] = json(results);
    } else if (!results.empty()) {
      echo[name] = results.back();
    } else if (!opt->get_default_str().empty()) {
      echo[name] = opt->get_default_str();
    }
  };
  for (const CLI::Option* opt : app.get_options()) add(opt);
  for (const CLI::Option* opt : sub.get_options()) add(opt);
  return echo;
}

void write_echo(const json& echo, const std::string& output) {
  std::ofstream out = open_output(output + ".config.json");
  out << echo.dump(2) << '\n';
}

std::map<std::string, std::map<std::string, double>> score_columns(const std::string& path,
                                                                   const std::string& name) {
  const ScoreTable table = table_from_rows(name, load_score_rows(path));
  std::map<std::string, std::map<std::string, double>> out;
  for (const auto& scorer : table.scorer_names()) out[scorer] = table.values(scorer);
  if (out.empty()) throw DataError("scores file " + path + " holds no rows");
  return out;
}

// ---------------------------------------------------------------------------
// Commands

void cmd_ingest(const RunConfig& c, const Logger& log) {
  Corpus corpus = load_corpus(c.in);
  if (!c.name.empty()) corpus.name = c.name;
  save_corpus(corpus, c.out);
  log.info("wrote " + std::to_string(corpus.size()) + " pairs of corpus " + corpus.name +
           " to " + c.out);
}

void cmd_score(const RunConfig& c, const Logger& log) {
  const auto kinds = parse_scorer_list(c.scorers);
  const Corpus corpus = load_corpus(c.in);
  const auto backend = make_backend(c.backend);
  ResumeReport resume;
  const ScoreTable table =
      score_corpus_to_file(corpus, kinds, *backend, c.out, ScoringOptions{c.threads}, &resume);
  std::size_t sentinels = 0;
  for (const auto& [scorer, column] : table.columns) {
    for (const auto& [id, s] : column) sentinels += s.is_sentinel() ? 1 : 0;
  }
  log.info("scored " + std::to_string(resume.scored) + " and reused " +
           std::to_string(resume.reused) + " rows (" + std::to_string(sentinels) +
           " sentinels) into " + c.out);
}

void cmd_filter(const RunConfig& c, const Logger& log) {
  std::optional<Corpus> corpus;
  std::string name = c.corpus_name;
  if (!c.corpus.empty()) {
    corpus = load_corpus(c.corpus);
    if (!name.empty() && name != corpus->name) {
      throw ConfigError("--corpus-name " + name + " does not match corpus " + corpus->name);
    }
    name = corpus->name;
  }
  if (name.empty()) throw ConfigError("filter needs --corpus or --corpus-name");
  if (!c.filtered_out.empty() && !corpus) {
    throw ConfigError("--filtered-out needs --corpus");
  }
  std::vector<std::string> scorers;
  if (!c.filter_scorers.empty()) scorers = scorer_list(c.filter_scorers);
  const ScoreTable table = table_from_rows(name, load_score_rows(c.scores), scorers);
  for (const auto& s : scorers) {
    if (!table.columns.count(s)) throw DataError("scores file has no rows for scorer " + s);
  }
  if (corpus) {
    validate_table(table, *corpus);
  } else {
    validate_table(table);
  }
  const FilterManifest manifest = intersect_filter(table, c.q);
  save_manifest(manifest, c.out);
  log.info("kept " + std::to_string(manifest.kept_ids.size()) + " of " +
           std::to_string(manifest.n_pairs) + " pairs (ratio " +
           format_real(manifest.selection_ratio) + "), manifest sha256 " +
           manifest_hash(manifest));
  if (!c.filtered_out.empty()) {
    save_corpus(apply_manifest(*corpus, manifest), c.filtered_out);
    log.info("wrote filtered corpus to " + c.filtered_out);
  }
}

void cmd_stats(const RunConfig& c, const Logger& log) {
  if (c.corpora.empty()) throw ConfigError("stats needs at least one --corpus");
  std::optional<Split> split;
  if (c.split != "all") {
    try {
      split = parse_split(c.split);
    } catch (const DataError& e) {
      throw ConfigError(std::string("--split: ") + e.what());
    }
  }
  std::map<std::string, FilterManifest> by_corpus;
  for (const auto& path : c.manifests) {
    FilterManifest m = load_manifest(path);
    const std::string key = m.corpus_name;
    if (!by_corpus.emplace(key, std::move(m)).second) {
      throw ConfigError("two manifests given for corpus " + key);
    }
  }
  std::vector<Corpus> corpora;
  for (const auto& path : c.corpora) corpora.push_back(load_corpus(path));
  for (const auto& [name, m] : by_corpus) {
    const bool known = std::any_of(corpora.begin(), corpora.end(),
                                   [&](const Corpus& k) { return k.name == name; });
    if (!known) throw ConfigError("manifest for corpus " + name + " has no matching --corpus");
  }

  std::ofstream out = open_output(c.out);
  out << stats_csv_header();
  for (const Corpus& corpus : corpora) {
    const Corpus full = select_split(corpus, split);
    const CorpusStats full_stats = corpus_stats(full);
    out << stats_csv_row(corpus.name, "full", full_stats, std::nullopt);
    auto it = by_corpus.find(corpus.name);
    if (it == by_corpus.end()) continue;
    const Corpus kept = select_split(apply_manifest(corpus, it->second), split);
    if (kept.empty()) throw DomainError("selection of " + corpus.name + " is empty in this split");
    const double ratio = static_cast<double>(kept.size()) / static_cast<double>(full.size());
    out << stats_csv_row(corpus.name, "filtered", corpus_stats(kept), ratio);
    log.info(corpus.name + ": kept " + std::to_string(kept.size()) + " of " +
             std::to_string(full.size()) + " (ratio " + format_real(ratio) + ")");
  }
  log.info("wrote " + c.out);
}

std::vector<FrankAnnotation> load_annotations(const RunConfig& c) {
  FrankColumnMap columns;
  if (!c.columns.empty()) {
    std::ifstream in(c.columns);
    if (!in) throw ConfigError("cannot open column map " + c.columns);
    try {
      columns = FrankColumnMap::from_json(json::parse(in));
    } catch (const json::exception& e) {
      throw ConfigError("column map " + c.columns + ": " + e.what());
    }
  }
  return load_frank(c.annotations, columns);
}

ValidationOptions validation_options(const RunConfig& c) {
  ValidationOptions opts;
  opts.covariates = parse_covariates(c.covariates);
  opts.mode = parse_mode(c.mode);
  if (!(c.min_coverage > 0.0 && c.min_coverage <= 1.0)) {
    throw ConfigError("--min-coverage must lie in (0, 1]");
  }
  opts.min_coverage = c.min_coverage;
  return opts;
}

void cmd_validate_frank(const RunConfig& c, const Logger& log) {
  const ValidationOptions opts = validation_options(c);
  const auto annotations = load_annotations(c);
  const auto scores = score_columns(c.scores, "annotations");
  std::set<SourceDataset> datasets;
  for (const auto& a : annotations) datasets.insert(a.source_dataset);

  std::ofstream out = open_output(c.out);
  out << csv_line({"scorer", "dataset", "n", "n_covariates", "r"});
  for (const auto& [scorer, values] : scores) {
    std::vector<std::optional<SourceDataset>> slices{std::nullopt};
    slices.insert(slices.end(), datasets.begin(), datasets.end());
    for (const auto& slice : slices) {
      const auto r = validate_scorer(values, annotations, slice, opts);
      out << csv_line({scorer, slice ? std::string(to_string(*slice)) : "all",
                       std::to_string(r.n), std::to_string(r.n_covariates), format_real(r.r)});
    }
  }
  log.info("validated " + std::to_string(scores.size()) + " scorers on " +
           std::to_string(annotations.size()) + " annotations into " + c.out);
}

void cmd_flip_analysis(const RunConfig& c, const Logger& log) {
  const ValidationOptions opts = validation_options(c);
  const auto annotations = load_annotations(c);
  const auto scores = score_columns(c.scores, "annotations");
  const FlipReport report = flip_analysis(scores, annotations, opts, c.threads);
  std::ofstream out = open_output(c.out);
  write_flip_csv(report, out);
  log.info("wrote " + std::to_string(report.rows.size()) + " flip rows to " + c.out);
}

void cmd_sweep(const RunConfig& c, const Logger& log) {
  SweepSpec spec;
  spec.thresholds = parse_real_list(c.thresholds, "thresholds");
  spec.seed = c.seed;
  const Corpus corpus = load_corpus(c.corpus);
  const ScoreTable table = table_from_rows(corpus.name, load_score_rows(c.scores));
  if (c.strategies.empty()) {
    for (const auto& s : table.scorer_names()) {
      spec.strategies.push_back({SweepStrategy::Kind::kSingle, s});
    }
    spec.strategies.push_back({SweepStrategy::Kind::kCombined, {}});
    spec.strategies.push_back({SweepStrategy::Kind::kRandom, {}});
  } else {
    for (const auto& label : split_list(c.strategies, ',')) {
      spec.strategies.push_back(parse_strategy(label));
    }
  }
  spec.validate();
  std::unique_ptr<Backend> backend;
  if (c.proxy_blanc) backend = make_backend(c.backend);
  const EvalHook hook = mock_train_proxy(table, backend.get());
  const SweepResult result = run_sweep(corpus, table, spec, hook, c.threads);
  std::size_t failed = 0;
  for (const auto& row : result.rows) failed += row.error.empty() ? 0 : 1;
  std::ofstream out = open_output(c.out);
  write_sweep_csv(result, out);
  log.info("wrote " + std::to_string(result.rows.size()) + " sweep cells (" +
           std::to_string(failed) + " failed) to " + c.out);
}

std::string default_summary_path(const std::string& out) {
  fs::path p(out);
  return (p.parent_path() / (p.stem().string() + ".summary.csv")).string();
}

void cmd_evaluate(const RunConfig& c, const Logger& log) {
  const auto metrics = parse_metric_list(c.metrics);
  const Corpus corpus = load_corpus(c.corpus);
  const auto generated = load_generated(c.generated);
  std::optional<FilterManifest> manifest;
  if (!c.manifest.empty()) manifest = load_manifest(c.manifest);
  std::unique_ptr<Backend> backend;
  if (std::any_of(metrics.begin(), metrics.end(),
                  [](Metric m) { return !is_reference_based(m); })) {
    backend = make_backend(c.backend);
  }
  const EvalReport report = evaluate_outputs(generated, corpus, manifest ? &*manifest : nullptr,
                                             metrics, backend.get(), EvalOptions{c.threads});
  {
    std::ofstream out = open_output(c.out);
    write_eval_csv(report, out);
  }
  const std::string summary_path =
      c.summary_out.empty() ? default_summary_path(c.out) : c.summary_out;
  {
    std::ofstream out = open_output(summary_path);
    out << eval_summary_header() << eval_summary_row(report, c.label);
  }
  for (const auto& name : report.metric_order) {
    const auto& agg = report.aggregates.at(name);
    log.info(name + ": mean " + format_real(agg.mean) + " over " + std::to_string(agg.n) +
             " pairs, " + std::to_string(agg.n_failed) + " failed");
  }
  log.info("wrote " + c.out + " and " + summary_path);
}

void cmd_compare(const RunConfig& c, const Logger& log) {
  const EvalReport a = load_eval_csv(c.a);
  const EvalReport b = load_eval_csv(c.b);
  WilcoxonOptions opts;
  opts.threads = c.threads;
  const ComparisonReport report = compare_selections(a, b, opts);
  {
    std::ofstream out = open_output(c.out);
    write_comparison_csv(report, out);
  }
  if (!c.table_out.empty()) {
    std::ofstream out = open_output(c.table_out);
    out << eval_summary_header() << eval_summary_row(a, c.label_a)
        << eval_summary_row(b, c.label_b);
  }
  for (const auto& m : report.metrics) {
    log.info(m.metric + ": winner " + std::string(to_string(m.winner)) +
             (m.wilcoxon ? " (p " + format_real(m.wilcoxon->p_value) + ")" : "") +
             (m.note.empty() ? "" : ", " + m.note));
  }
  log.info("wrote " + c.out);
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& log) {
  RunConfig c;
  CLI::App app{"Factual-consistency filtration of summarization corpora", "factfilter"};
  app.option_defaults()->always_capture_default();
  app.require_subcommand(1);
  app.fallthrough();
  app.add_option("--config", c.config_path, "JSON run file; command-line options take precedence");
  app.add_option("--threads", c.threads, "Worker threads")->check(CLI::PositiveNumber);
  app.add_option("--backend", c.backend, "Backend id (builtin: mock; more via " +
                                             std::string(kBackendRegistryEnv) + ")");
  app.add_flag("--quiet", c.quiet, "Suppress progress logging");

  struct Command {
    CLI::App* app;
    void (*run)(const RunConfig&, const Logger&);
    std::string primary_output;
  };
  std::vector<Command> commands;

  auto* ingest = app.add_subcommand("ingest", "Validate a JSONL corpus and write it canonically");
  ingest->add_option("--in", c.in, "Input corpus JSONL");
  ingest->add_option("--out", c.out, "Output corpus JSONL");
  ingest->add_option("--name", c.name, "Corpus name (defaults to the input file stem)");
  commands.push_back({ingest, cmd_ingest, "out"});

  auto* score = app.add_subcommand("score", "Score every pair with each scorer (resumable)");
  score->add_option("--in", c.in, "Corpus JSONL");
  score->add_option("--out", c.out, "Scores JSONL, appended to when it exists");
  score->add_option("--scorers", c.scorers, "Comma-separated scorers: greedy, condll, dae");
  commands.push_back({score, cmd_score, "out"});

  auto* filter = app.add_subcommand("filter", "Percentile-intersection filtration");
  filter->add_option("--scores", c.scores, "Scores JSONL");
  filter->add_option("--q", c.q, "Fraction dropped by each scorer, in (0, 1)");
  filter->add_option("--scorers", c.filter_scorers, "Scorers to combine (default: all in the file)");
  filter->add_option("--corpus", c.corpus, "Corpus JSONL the scores belong to");
  filter->add_option("--corpus-name", c.corpus_name, "Corpus name when --corpus is not given");
  filter->add_option("--out", c.out, "Manifest JSON");
  filter->add_option("--filtered-out", c.filtered_out, "Also write the filtered corpus JSONL");
  commands.push_back({filter, cmd_filter, "out"});

  auto* stats = app.add_subcommand("stats", "Dataset statistics, full and filtered");
  stats->add_option("--corpus", c.corpora, "Corpus JSONL (repeatable)");
  stats->add_option("--manifest", c.manifests, "Manifest JSON (repeatable, matched by corpus)");
  stats->add_option("--split", c.split, "train, validation, test or all");
  stats->add_option("--out", c.out, "Statistics CSV");
  commands.push_back({stats, cmd_stats, "out"});

  auto* validate = app.add_subcommand("validate-frank", "Partial correlation with annotations");
  auto* flip = app.add_subcommand("flip-analysis", "Correlation change under label flips");
  for (CLI::App* sub : {validate, flip}) {
    sub->add_option("--annotations", c.annotations, "Annotation JSONL or JSON array");
    sub->add_option("--columns", c.columns, "JSON column map for the annotation file");
    sub->add_option("--scores", c.scores, "Scores JSONL keyed by annotation summary id");
    sub->add_option("--covariates", c.covariates, "system or none");
    sub->add_option("--mode", c.mode, "pearson or rank");
    sub->add_option("--min-coverage", c.min_coverage, "Minimum scored fraction of annotations");
    sub->add_option("--out", c.out, "Output CSV");
  }
  commands.push_back({validate, cmd_validate_frank, "out"});
  commands.push_back({flip, cmd_flip_analysis, "out"});

  auto* sweep = app.add_subcommand("sweep", "Selection strategies over a threshold grid");
  sweep->add_option("--corpus", c.corpus, "Corpus JSONL");
  sweep->add_option("--scores", c.scores, "Scores JSONL");
  sweep->add_option("--thresholds", c.thresholds, "Ascending drop fractions in (0, 1)");
  sweep->add_option("--strategies", c.strategies,
                    "single:<scorer>, combined, random (default: all)");
  sweep->add_option("--seed", c.seed, "Seed of the random strategy");
  sweep->add_option("--proxy-blanc", c.proxy_blanc, "Report BLANC-help in the proxy evaluation");
  sweep->add_option("--out", c.out, "Sweep CSV");
  commands.push_back({sweep, cmd_sweep, "out"});

  auto* evaluate = app.add_subcommand("evaluate", "Score generated summaries on the test split");
  evaluate->add_option("--corpus", c.corpus, "Corpus JSONL");
  evaluate->add_option("--generated", c.generated, "Generated summaries JSONL {id, summary}");
  evaluate->add_option("--manifest", c.manifest, "Restrict ROUGE-2 to this manifest's pairs");
  evaluate->add_option("--metrics", c.metrics, "greedy, condll, dae, blanc, rouge2");
  evaluate->add_option("--label", c.label, "Row label of the summary CSV");
  evaluate->add_option("--out", c.out, "Per-pair CSV");
  evaluate->add_option("--summary-out", c.summary_out,
                       "Aggregate CSV (default: <out stem>.summary.csv)");
  commands.push_back({evaluate, cmd_evaluate, "out"});

  auto* compare = app.add_subcommand("compare", "Paired comparison of two evaluations");
  compare->add_option("--a", c.a, "Per-pair evaluation CSV of selection a");
  compare->add_option("--b", c.b, "Per-pair evaluation CSV of selection b");
  compare->add_option("--out", c.out, "Comparison CSV");
  compare->add_option("--table-out", c.table_out, "Aggregate rows of both selections");
  compare->add_option("--label-a", c.label_a, "Row label of a");
  compare->add_option("--label-b", c.label_b, "Row label of b");
  commands.push_back({compare, cmd_compare, "out"});

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    log << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    log << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    log << "factfilter: " << e.what() << "\n\n" << app.help();
    return kExitUsage;
  }

  const Command* selected = nullptr;
  for (const auto& cmd : commands) {
    if (cmd.app->parsed()) selected = &cmd;
  }
  Logger logger(log, c.quiet, selected->app->get_name());
  try {
    if (!c.config_path.empty()) apply_run_file(app, *selected->app, c.config_path);
    if (c.threads < 1) throw ConfigError("--threads must be at least 1");
    // Every command reads something and writes --out.
    require(c.out, "out");
    const std::map<std::string, std::vector<std::pair<const std::string*, const char*>>> required{
        {"ingest", {{&c.in, "in"}}},
        {"score", {{&c.in, "in"}}},
        {"filter", {{&c.scores, "scores"}}},
        {"stats", {}},
        {"validate-frank", {{&c.annotations, "annotations"}, {&c.scores, "scores"}}},
        {"flip-analysis", {{&c.annotations, "annotations"}, {&c.scores, "scores"}}},
        {"sweep", {{&c.corpus, "corpus"}, {&c.scores, "scores"}}},
        {"evaluate", {{&c.corpus, "corpus"}, {&c.generated, "generated"}}},
        {"compare", {{&c.a, "a"}, {&c.b, "b"}}},
    };
    for (const auto& [value, name] : required.at(selected->app->get_name())) require(*value, name);

    write_echo(config_echo(app, *selected->app), c.out);
    selected->run(c, logger);
    return kExitOk;
  } catch (const ConfigError& e) {
    logger.error(e.what());
    log << "Run with --help for usage.\n";
    return kExitUsage;
  } catch (const DataError& e) {
    logger.error(e.what());
    return kExitData;
  } catch (const BackendError& e) {
    logger.error(e.what());
    return kExitBackend;
  } catch (const std::exception& e) {
    logger.error(std::string("internal error: ") + e.what());
    return kExitData;
  }
}

int run_cli(int argc, const char* const* argv) {
  std::vector<std::string> args(argv + (argc > 0 ? 1 : 0), argv + argc);
  return run_cli(args, std::cerr);
}

}  // namespace factfilter
