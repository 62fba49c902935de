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

// Pearson and partial Pearson correlation, Wilcoxon signed-rank test.

#ifndef FACTFILTER_STATS_H_
#define FACTFILTER_STATS_H_

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

namespace factfilter {

// Sample correlation. Needs equal lengths >= 3; zero variance in either
// argument is a DegenerateInputError.
double pearson(std::span<const double> x, std::span<const double> y);

struct PartialCorrelationResult {
  double r = 0.0;
  std::size_t n = 0;
  std::size_t n_covariates = 0;
};

// Columns of covariates, each of the same length as x.
using CovariateMatrix = std::vector<std::vector<double>>;

// Least-squares residuals of v regressed on [1, covariates], via Householder
// QR of the design. Throws DegenerateInputError when the design is rank
// deficient.
std::vector<double> residualize(std::span<const double> v, const CovariateMatrix& covariates);

// Pearson correlation of the residuals of x and y after regressing both on
// [1, covariates]. With no covariates this is exactly pearson(x, y).
// Requires n > n_covariates + 2.
PartialCorrelationResult partial_pearson(std::span<const double> x, std::span<const double> y,
                                         const CovariateMatrix& covariates);

// 1-based ranks with ties sharing their average rank.
std::vector<double> average_ranks(std::span<const double> values);

enum class WilcoxonMethod { kExact, kNormalApprox };
std::string_view to_string(WilcoxonMethod method);

struct WilcoxonResult {
  double w_statistic = 0.0;  // sum of ranks of positive differences
  double p_value = 1.0;      // two-sided, in (0, 1]
  std::size_t n_effective = 0;
  WilcoxonMethod method = WilcoxonMethod::kExact;
};

inline constexpr std::size_t kWilcoxonExactCutoff = 20;

struct WilcoxonOptions {
  std::size_t exact_cutoff = kWilcoxonExactCutoff;
  int threads = 1;
};

// Paired test on d_i = a_i - b_i. Zero differences are discarded, tied
// |d| share average ranks. For n_effective <= exact_cutoff the null
// distribution is enumerated over all 2^n sign patterns; otherwise the
// normal approximation with tie-corrected variance and continuity
// correction is used. All-zero differences are a DegenerateInputError.
WilcoxonResult wilcoxon_signed_rank(std::span<const double> a, std::span<const double> b,
                                    const WilcoxonOptions& options = {});
WilcoxonResult wilcoxon_signed_rank(std::span<const double> differences,
                                    const WilcoxonOptions& options = {});

// Counts over all 2^n sign patterns of sum(rank_i over positive i), with
// ranks given doubled so average ranks stay integral.
struct SignedRankTail {
  std::uint64_t at_least = 0;  // patterns with statistic >= w
  std::uint64_t at_most = 0;   // patterns with statistic <= w
  std::uint64_t total = 0;
};

// Straight enumeration, one pattern at a time.
SignedRankTail signed_rank_tail_serial(std::span<const std::int64_t> doubled_ranks,
                                       std::int64_t doubled_w);
// Split-table enumeration parallelised over the high bits.
SignedRankTail signed_rank_tail(std::span<const std::int64_t> doubled_ranks,
                                std::int64_t doubled_w, int threads);

}  // namespace factfilter

#endif  // FACTFILTER_STATS_H_
