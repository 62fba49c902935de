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

// Experiment drivers: score distributions, threshold sweeps over selection
// strategies, and paired comparison of two evaluated selections.

#ifndef FACTFILTER_EXPERIMENTS_H_
#define FACTFILTER_EXPERIMENTS_H_

#include <cstddef>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "factfilter/backend.h"
#include "factfilter/corpus.h"
#include "factfilter/metrics.h"
#include "factfilter/scorers.h"
#include "factfilter/stats.h"

namespace factfilter {

// Linear interpolation between order statistics: h = (n - 1) p,
// x[floor h] + (h - floor h) (x[floor h + 1] - x[floor h]).
double quantile_type7(std::span<const double> sorted, double p);

struct FiveNumberSummary {
  double min = 0.0;
  double q1 = 0.0;
  double median = 0.0;
  double q3 = 0.0;
  double max = 0.0;
};

FiveNumberSummary five_number_summary(std::span<const double> values);

// `bins` equal-width bins over [lo, hi]; the last bin is closed. A constant
// sample puts everything in bin 0.
struct Histogram {
  double lo = 0.0;
  double hi = 0.0;
  std::vector<std::size_t> counts;
};

Histogram histogram(std::span<const double> values, std::size_t bins);

struct ScorerDistribution {
  std::string scorer;
  std::size_t n = 0;  // non-sentinel values
  std::size_t n_sentinel = 0;
  std::optional<FiveNumberSummary> summary;  // empty when n == 0
  double mean = 0.0;
  Histogram hist;
};

struct DistributionReport {
  std::string corpus_name;
  std::vector<ScorerDistribution> scorers;  // in table column order
};

inline constexpr std::size_t kDefaultHistogramBins = 20;

DistributionReport distribution_report(const ScoreTable& table,
                                       std::size_t bins = kDefaultHistogramBins);

// corpus,scorer,n,n_sentinel,min,q1,median,q3,max,mean
void write_distribution_csv(const DistributionReport& report, std::ostream& out);
// corpus,scorer,bin,lo,hi,count
void write_histogram_csv(const DistributionReport& report, std::ostream& out);

// ---------------------------------------------------------------------------
// Sweeps

struct SweepStrategy {
  enum class Kind { kSingle, kCombined, kRandom };
  Kind kind = Kind::kCombined;
  std::string scorer;  // kSingle only

  // "single:<scorer>", "combined", "random"
  std::string label() const;
  friend bool operator==(const SweepStrategy&, const SweepStrategy&) = default;
};

SweepStrategy parse_strategy(std::string_view label);

inline const std::vector<double> kDefaultSweepThresholds = {0.1, 0.25, 0.4, 0.55};

// Thresholds are drop fractions q. The random strategy draws keep_count(n, q)
// pairs, the size of a single-scorer selection at the same threshold.
struct SweepSpec {
  std::vector<double> thresholds = kDefaultSweepThresholds;
  std::vector<SweepStrategy> strategies;
  std::uint64_t seed = 0;

  // Thresholds strictly ascending in (0, 1), at least one strategy, no
  // duplicate strategies. Throws ConfigError.
  void validate() const;
};

// Downstream metrics of a selection. Must be safe to call concurrently
// when the sweep runs with more than one thread.
using EvalHook = std::function<std::map<std::string, double>(const Corpus& selection)>;

// Training-free proxy: means of every table column over the selection and,
// given a backend, mean BLANC-help of the selection's reference summaries.
EvalHook mock_train_proxy(const ScoreTable& table, const Backend* backend);

struct SweepRow {
  std::string strategy;
  double threshold = 0.0;
  std::size_t n_selected = 0;
  double ratio = 0.0;
  std::map<std::string, double> metrics;
  std::string error;  // non-empty for failed cells
};

struct SweepResult {
  std::size_t n_pairs = 0;
  std::vector<SweepRow> rows;  // strategy order of the spec, thresholds ascending
};

// Random cells use seed spec.seed + threshold index.
SweepResult run_sweep(const Corpus& corpus, const ScoreTable& table, const SweepSpec& spec,
                      const EvalHook& hook, int threads = 1);

// strategy,threshold,n_selected,ratio,<metrics sorted>,error
void write_sweep_csv(const SweepResult& result, std::ostream& out);

// ---------------------------------------------------------------------------
// Comparisons

enum class Winner { kA, kB, kTie };
std::string_view to_string(Winner winner);

inline constexpr double kSignificanceLevel = 0.05;

struct MetricComparison {
  std::string metric;
  std::size_t n = 0;  // pairs with a value in both reports
  double mean_a = 0.0;
  double mean_b = 0.0;
  std::optional<WilcoxonResult> wilcoxon;  // empty when every difference is 0
  Winner winner = Winner::kTie;
  std::string note;
};

struct ComparisonReport {
  std::vector<MetricComparison> metrics;  // metric order of report a
};

// Paired Wilcoxon per metric on pairs valued in both reports. Winner is
// the higher mean when p < 0.05, tie otherwise. Differing metric sets or
// pair ids are a CoverageError.
ComparisonReport compare_selections(const EvalReport& a, const EvalReport& b,
                                    const WilcoxonOptions& options = {});

// metric,n,mean_a,mean_b,w_statistic,p_value,method,winner,note
void write_comparison_csv(const ComparisonReport& report, std::ostream& out);

}  // namespace factfilter

#endif  // FACTFILTER_EXPERIMENTS_H_
