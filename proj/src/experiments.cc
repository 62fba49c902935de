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

#include "factfilter/experiments.h"

#include <algorithm>
#include <cmath>
#include <memory>
#include <ostream>
#include <set>
#include <unordered_set>

#include "factfilter/csv.h"
#include "factfilter/errors.h"
#include "factfilter/filtration.h"
#include "factfilter/parallel.h"

namespace factfilter {

double quantile_type7(std::span<const double> sorted, double p) {
  if (sorted.empty()) throw DomainError("quantile of an empty sample");
  if (!(p >= 0.0 && p <= 1.0)) throw DomainError("quantile probability outside [0, 1]");
  const double h = static_cast<double>(sorted.size() - 1) * p;
  const auto lo = static_cast<std::size_t>(std::floor(h));
  if (lo + 1 >= sorted.size()) return sorted.back();
  return sorted[lo] + (h - static_cast<double>(lo)) * (sorted[lo + 1] - sorted[lo]);
}

FiveNumberSummary five_number_summary(std::span<const double> values) {
  std::vector<double> sorted(values.begin(), values.end());
  std::sort(sorted.begin(), sorted.end());
  return {quantile_type7(sorted, 0.0), quantile_type7(sorted, 0.25), quantile_type7(sorted, 0.5),
          quantile_type7(sorted, 0.75), quantile_type7(sorted, 1.0)};
}

Histogram histogram(std::span<const double> values, std::size_t bins) {
  if (bins == 0) throw ConfigError("histogram needs at least one bin");
  Histogram h;
  h.counts.assign(bins, 0);
  if (values.empty()) return h;
  const auto [lo, hi] = std::minmax_element(values.begin(), values.end());
  h.lo = *lo;
  h.hi = *hi;
  const double width = (h.hi - h.lo) / static_cast<double>(bins);
  for (double v : values) {
    std::size_t bin = 0;
    if (width > 0.0) {
      bin = std::min(bins - 1, static_cast<std::size_t>((v - h.lo) / width));
    }
    ++h.counts[bin];
  }
  return h;
}

DistributionReport distribution_report(const ScoreTable& table, std::size_t bins) {
  validate_table(table);
  DistributionReport report;
  report.corpus_name = table.corpus_name;
  for (const auto& scorer : table.scorer_names()) {
    const auto by_id = table.values(scorer);
    std::vector<double> values;
    values.reserve(by_id.size());
    for (const auto& [id, v] : by_id) values.push_back(v);
    ScorerDistribution d;
    d.scorer = scorer;
    d.n = values.size();
    d.n_sentinel = table.columns.at(scorer).size() - values.size();
    d.hist = histogram(values, bins);
    if (!values.empty()) {
      d.summary = five_number_summary(values);
      double total = 0.0;
      for (double v : values) total += v;
      d.mean = total / static_cast<double>(values.size());
    }
    report.scorers.push_back(std::move(d));
  }
  return report;
}

void write_distribution_csv(const DistributionReport& report, std::ostream& out) {
  out << csv_line({"corpus", "scorer", "n", "n_sentinel", "min", "q1", "median", "q3", "max",
                   "mean"});
  for (const auto& d : report.scorers) {
    std::vector<std::string> f{report.corpus_name, d.scorer, std::to_string(d.n),
                               std::to_string(d.n_sentinel)};
    if (d.summary) {
      for (double v : {d.summary->min, d.summary->q1, d.summary->median, d.summary->q3,
                       d.summary->max, d.mean}) {
        f.push_back(format_real(v));
      }
    } else {
      f.resize(f.size() + 6);
    }
    out << csv_line(f);
  }
}

void write_histogram_csv(const DistributionReport& report, std::ostream& out) {
  out << csv_line({"corpus", "scorer", "bin", "lo", "hi", "count"});
  for (const auto& d : report.scorers) {
    const std::size_t bins = d.hist.counts.size();
    const double width = (d.hist.hi - d.hist.lo) / static_cast<double>(bins);
    for (std::size_t b = 0; b < bins; ++b) {
      const double lo = d.hist.lo + width * static_cast<double>(b);
      const double hi = b + 1 == bins ? d.hist.hi : d.hist.lo + width * static_cast<double>(b + 1);
      out << csv_line({report.corpus_name, d.scorer, std::to_string(b), format_real(lo),
                       format_real(hi), std::to_string(d.hist.counts[b])});
    }
  }
}

// ---------------------------------------------------------------------------
// Sweeps

std::string SweepStrategy::label() const {
  switch (kind) {
    case Kind::kSingle:
      return "single:" + scorer;
    case Kind::kCombined:
      return "combined";
    case Kind::kRandom:
      return "random";
  }
  return "combined";
}

SweepStrategy parse_strategy(std::string_view label) {
  if (label == "combined") return {SweepStrategy::Kind::kCombined, {}};
  if (label == "random") return {SweepStrategy::Kind::kRandom, {}};
  constexpr std::string_view kPrefix = "single:";
  if (label.substr(0, kPrefix.size()) == kPrefix && label.size() > kPrefix.size()) {
    return {SweepStrategy::Kind::kSingle, std::string(label.substr(kPrefix.size()))};
  }
  throw ConfigError("unknown sweep strategy \"" + std::string(label) +
                    "\" (expected single:<scorer>, combined, random)");
}

void SweepSpec::validate() const {
  if (thresholds.empty()) throw ConfigError("sweep needs at least one threshold");
  for (std::size_t i = 0; i < thresholds.size(); ++i) {
    const double t = thresholds[i];
    if (!(t > 0.0 && t < 1.0)) {
      throw ConfigError("sweep threshold " + format_real(t) + " is outside (0, 1)");
    }
    if (i > 0 && !(thresholds[i - 1] < t)) {
      throw ConfigError("sweep thresholds must be strictly ascending");
    }
  }
  if (strategies.empty()) throw ConfigError("sweep needs at least one strategy");
  for (std::size_t i = 0; i < strategies.size(); ++i) {
    for (std::size_t j = 0; j < i; ++j) {
      if (strategies[i] == strategies[j]) {
        throw ConfigError("sweep strategy " + strategies[i].label() + " listed twice");
      }
    }
  }
}

EvalHook mock_train_proxy(const ScoreTable& table, const Backend* backend) {
  std::shared_ptr<const Backend> safe;
  if (backend) {
    if (backend->descriptor().thread_safe) {
      safe = std::shared_ptr<const Backend>(backend, [](const Backend*) {});
    } else {
      safe = std::make_shared<SerializedBackend>(*backend);
    }
  }
  auto columns = std::make_shared<std::map<std::string, std::map<std::string, double>>>();
  for (const auto& scorer : table.scorer_names()) (*columns)[scorer] = table.values(scorer);

  return [columns, safe](const Corpus& selection) {
    std::map<std::string, double> out;
    for (const auto& [scorer, values] : *columns) {
      double total = 0.0;
      std::size_t n = 0;
      for (const Pair& p : selection.pairs) {
        auto it = values.find(p.id);
        if (it == values.end()) continue;
        total += it->second;
        ++n;
      }
      if (n) out[scorer] = total / static_cast<double>(n);
    }
    if (safe) {
      double total = 0.0;
      std::size_t n = 0;
      for (const Pair& p : selection.pairs) {
        try {
          total += blanc_help(p.document, p.summary, *safe).value;
          ++n;
        } catch (const ScoringError&) {
        } catch (const LengthError&) {
        }
      }
      if (n) out["blanc"] = total / static_cast<double>(n);
    }
    return out;
  };
}

namespace {

Corpus subset(const Corpus& corpus, const std::vector<std::string>& ids) {
  const std::unordered_set<std::string_view> keep(ids.begin(), ids.end());
  Corpus out;
  out.name = corpus.name;
  out.schema_version = corpus.schema_version;
  for (const Pair& p : corpus.pairs) {
    if (keep.count(p.id)) out.pairs.push_back(p);
  }
  return out;
}

}  // namespace

SweepResult run_sweep(const Corpus& corpus, const ScoreTable& table, const SweepSpec& spec,
                      const EvalHook& hook, int threads) {
  spec.validate();
  if (!hook) throw ConfigError("sweep needs an evaluation hook");
  validate_table(table, corpus);
  const auto scorers = table.scorer_names();
  for (const auto& s : spec.strategies) {
    if (s.kind == SweepStrategy::Kind::kSingle &&
        std::find(scorers.begin(), scorers.end(), s.scorer) == scorers.end()) {
      throw ConfigError("sweep strategy " + s.label() + " names a scorer not in the table");
    }
    if (s.kind == SweepStrategy::Kind::kCombined && scorers.size() < 2) {
      throw ConfigError("combined strategy needs at least two scorers");
    }
  }

  SweepResult result;
  result.n_pairs = corpus.size();
  const std::size_t n_thresholds = spec.thresholds.size();
  result.rows.resize(spec.strategies.size() * n_thresholds);

  parallel_for(result.rows.size(), threads, [&](std::size_t cell) {
    const SweepStrategy& strategy = spec.strategies[cell / n_thresholds];
    const std::size_t t_index = cell % n_thresholds;
    const double q = spec.thresholds[t_index];
    SweepRow& row = result.rows[cell];
    row.strategy = strategy.label();
    row.threshold = q;
    try {
      std::vector<std::string> ids;
      switch (strategy.kind) {
        case SweepStrategy::Kind::kSingle:
          ids = percentile_keep_set(table.values(strategy.scorer), q);
          break;
        case SweepStrategy::Kind::kCombined:
          ids = intersect_filter(table, q).kept_ids;
          break;
        case SweepStrategy::Kind::kRandom:
          ids = random_selection(corpus, keep_count(corpus.size(), q), spec.seed + t_index);
          break;
      }
      row.n_selected = ids.size();
      row.ratio = static_cast<double>(ids.size()) / static_cast<double>(result.n_pairs);
      if (ids.empty()) {
        row.error = "empty selection";
        return;
      }
      row.metrics = hook(subset(corpus, ids));
    } catch (const Error& e) {
      row.error = e.what();
    }
  });
  return result;
}

void write_sweep_csv(const SweepResult& result, std::ostream& out) {
  std::set<std::string> metric_names;
  for (const auto& row : result.rows) {
    for (const auto& [name, v] : row.metrics) metric_names.insert(name);
  }
  std::vector<std::string> header{"strategy", "threshold", "n_selected", "ratio"};
  header.insert(header.end(), metric_names.begin(), metric_names.end());
  header.emplace_back("error");
  out << csv_line(header);
  for (const auto& row : result.rows) {
    std::vector<std::string> f{row.strategy, format_real(row.threshold),
                               std::to_string(row.n_selected), format_real(row.ratio)};
    for (const auto& name : metric_names) {
      auto it = row.metrics.find(name);
      f.push_back(it == row.metrics.end() ? std::string() : format_real(it->second));
    }
    f.push_back(row.error);
    out << csv_line(f);
  }
}

// ---------------------------------------------------------------------------
// Comparisons

std::string_view to_string(Winner winner) {
  switch (winner) {
    case Winner::kA:
      return "a";
    case Winner::kB:
      return "b";
    case Winner::kTie:
      return "tie";
  }
  return "tie";
}

namespace {

using RowIndex = std::map<std::string, std::map<std::string, std::optional<double>>>;

RowIndex index_rows(const EvalReport& report) {
  RowIndex out;
  for (const auto& m : report.metric_order) out[m];
  for (const auto& row : report.rows) out[row.metric][row.pair_id] = row.value;
  return out;
}

}  // namespace

ComparisonReport compare_selections(const EvalReport& a, const EvalReport& b,
                                    const WilcoxonOptions& options) {
  const RowIndex ia = index_rows(a);
  const RowIndex ib = index_rows(b);
  std::vector<std::string> metric_mismatch;
  for (const auto& [m, rows] : ia) {
    if (!ib.count(m)) metric_mismatch.push_back(m);
  }
  for (const auto& [m, rows] : ib) {
    if (!ia.count(m)) metric_mismatch.push_back(m);
  }
  if (!metric_mismatch.empty()) {
    throw CoverageError("reports evaluate different metrics", std::move(metric_mismatch));
  }

  ComparisonReport report;
  std::vector<std::string> order = a.metric_order;
  for (const auto& [m, rows] : ia) {
    if (std::find(order.begin(), order.end(), m) == order.end()) order.push_back(m);
  }
  for (const auto& metric : order) {
    const auto& ra = ia.at(metric);
    const auto& rb = ib.at(metric);
    std::vector<std::string> id_mismatch;
    for (const auto& [id, v] : ra) {
      if (!rb.count(id)) id_mismatch.push_back(id);
    }
    for (const auto& [id, v] : rb) {
      if (!ra.count(id)) id_mismatch.push_back(id);
    }
    if (!id_mismatch.empty()) {
      throw CoverageError("reports cover different pairs for metric " + metric,
                          std::move(id_mismatch));
    }

    MetricComparison c;
    c.metric = metric;
    std::vector<double> va, vb;
    for (const auto& [id, v] : ra) {
      const auto& w = rb.at(id);
      if (!v || !w) continue;
      va.push_back(*v);
      vb.push_back(*w);
    }
    c.n = va.size();
    if (c.n == 0) {
      c.note = "no pair valued in both reports";
      report.metrics.push_back(std::move(c));
      continue;
    }
    for (std::size_t i = 0; i < c.n; ++i) {
      c.mean_a += va[i];
      c.mean_b += vb[i];
    }
    c.mean_a /= static_cast<double>(c.n);
    c.mean_b /= static_cast<double>(c.n);
    try {
      c.wilcoxon = wilcoxon_signed_rank(va, vb, options);
    } catch (const DegenerateInputError&) {
      c.note = "all paired differences are zero";
      report.metrics.push_back(std::move(c));
      continue;
    }
    if (c.wilcoxon->p_value < kSignificanceLevel) {
      if (c.mean_a > c.mean_b) {
        c.winner = Winner::kA;
      } else if (c.mean_b > c.mean_a) {
        c.winner = Winner::kB;
      } else {
        c.note = "significant but equal means";
      }
    }
    report.metrics.push_back(std::move(c));
  }
  return report;
}

void write_comparison_csv(const ComparisonReport& report, std::ostream& out) {
  out << csv_line({"metric", "n", "mean_a", "mean_b", "w_statistic", "p_value", "method",
                   "winner", "note"});
  for (const auto& c : report.metrics) {
    std::vector<std::string> f{c.metric, std::to_string(c.n), format_real(c.mean_a),
                               format_real(c.mean_b)};
    if (c.wilcoxon) {
      f.push_back(format_real(c.wilcoxon->w_statistic));
      f.push_back(format_real(c.wilcoxon->p_value));
      f.emplace_back(to_string(c.wilcoxon->method));
    } else {
      f.resize(f.size() + 3);
    }
    f.emplace_back(to_string(c.winner));
    f.push_back(c.note);
    out << csv_line(f);
  }
}

}  // namespace factfilter
