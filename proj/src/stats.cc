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

#include "factfilter/stats.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "factfilter/errors.h"

namespace factfilter {

double pearson(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) {
    throw DomainError("pearson: length mismatch " + std::to_string(x.size()) + " vs " +
                      std::to_string(y.size()));
  }
  const std::size_t n = x.size();
  if (n < 3) throw DomainError("pearson needs at least 3 samples");
  double mx = 0.0;
  double my = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= static_cast<double>(n);
  my /= static_cast<double>(n);
  double sxx = 0.0;
  double syy = 0.0;
  double sxy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double dx = x[i] - mx;
    const double dy = y[i] - my;
    sxx += dx * dx;
    syy += dy * dy;
    sxy += dx * dy;
  }
  if (sxx == 0.0 || syy == 0.0) throw DegenerateInputError("pearson: zero variance input");
  return std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
}

namespace {

double centered_ss(std::span<const double> v) {
  double m = 0.0;
  for (double x : v) m += x;
  m /= static_cast<double>(v.size());
  double ss = 0.0;
  for (double x : v) ss += (x - m) * (x - m);
  return ss;
}

// Householder QR of the n x p design [1, covariates], kept as the list of
// reflectors. Only what residualization needs.
class HouseholderQr {
 public:
  HouseholderQr(std::size_t n, const CovariateMatrix& covariates) : n_(n) {
    std::vector<std::vector<double>> a;
    a.emplace_back(n, 1.0);
    for (const auto& c : covariates) {
      if (c.size() != n) throw DomainError("covariate column length mismatch");
      a.push_back(c);
    }
    p_ = a.size();
    if (p_ > n) throw DegenerateInputError("more regressors than samples");
    std::vector<double> original_norm(p_);
    for (std::size_t j = 0; j < p_; ++j) {
      double s = 0.0;
      for (double v : a[j]) s += v * v;
      original_norm[j] = std::sqrt(s);
    }
    for (std::size_t k = 0; k < p_; ++k) {
      double norm = 0.0;
      for (std::size_t i = k; i < n_; ++i) norm += a[k][i] * a[k][i];
      norm = std::sqrt(norm);
      if (norm <= 1e-10 * std::max(original_norm[k], 1.0)) {
        throw DegenerateInputError("covariate design is rank deficient");
      }
      const double alpha = a[k][k] > 0 ? -norm : norm;
      std::vector<double> v(n_, 0.0);
      for (std::size_t i = k; i < n_; ++i) v[i] = a[k][i];
      v[k] -= alpha;
      double vnorm = 0.0;
      for (std::size_t i = k; i < n_; ++i) vnorm += v[i] * v[i];
      vnorm = std::sqrt(vnorm);
      for (std::size_t i = k; i < n_; ++i) v[i] /= vnorm;
      for (std::size_t j = k; j < p_; ++j) reflect(v, k, a[j]);
      reflectors_.push_back(std::move(v));
    }
  }

  // v - Q Q^T v.
  std::vector<double> residual(std::span<const double> values) const {
    std::vector<double> r(values.begin(), values.end());
    for (std::size_t k = 0; k < p_; ++k) reflect(reflectors_[k], k, r);
    for (std::size_t k = 0; k < p_; ++k) r[k] = 0.0;
    for (std::size_t k = p_; k-- > 0;) reflect(reflectors_[k], k, r);
    return r;
  }

 private:
  void reflect(const std::vector<double>& v, std::size_t from, std::vector<double>& x) const {
    double dot = 0.0;
    for (std::size_t i = from; i < n_; ++i) dot += v[i] * x[i];
    for (std::size_t i = from; i < n_; ++i) x[i] -= 2.0 * dot * v[i];
  }

  std::size_t n_;
  std::size_t p_ = 0;
  std::vector<std::vector<double>> reflectors_;
};

void check_residual(std::span<const double> original, const std::vector<double>& resid,
                    const char* name) {
  const double total = centered_ss(original);
  double ss = 0.0;
  for (double r : resid) ss += r * r;
  if (total == 0.0 || ss <= 1e-20 * total) {
    throw DegenerateInputError(std::string("partial_pearson: ") + name +
                               " is fully explained by the covariates");
  }
}

}  // namespace

std::vector<double> residualize(std::span<const double> v, const CovariateMatrix& covariates) {
  return HouseholderQr(v.size(), covariates).residual(v);
}

PartialCorrelationResult partial_pearson(std::span<const double> x, std::span<const double> y,
                                         const CovariateMatrix& covariates) {
  if (x.size() != y.size()) throw DomainError("partial_pearson: length mismatch");
  const std::size_t n = x.size();
  if (n <= covariates.size() + 2) {
    throw DomainError("partial_pearson needs more than " + std::to_string(covariates.size() + 2) +
                      " samples, got " + std::to_string(n));
  }
  PartialCorrelationResult result;
  result.n = n;
  result.n_covariates = covariates.size();
  if (covariates.empty()) {
    result.r = pearson(x, y);
    return result;
  }
  const HouseholderQr qr(n, covariates);
  const auto rx = qr.residual(x);
  const auto ry = qr.residual(y);
  check_residual(x, rx, "x");
  check_residual(y, ry, "y");
  result.r = pearson(rx, ry);
  return result;
}

std::vector<double> average_ranks(std::span<const double> values) {
  std::vector<std::size_t> order(values.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
  std::vector<double> ranks(values.size());
  std::size_t i = 0;
  while (i < order.size()) {
    std::size_t j = i;
    while (j + 1 < order.size() && values[order[j + 1]] == values[order[i]]) ++j;
    const double rank = (static_cast<double>(i + 1) + static_cast<double>(j + 1)) / 2.0;
    for (std::size_t k = i; k <= j; ++k) ranks[order[k]] = rank;
    i = j + 1;
  }
  return ranks;
}

// ---------------------------------------------------------------------------
// Wilcoxon

std::string_view to_string(WilcoxonMethod method) {
  return method == WilcoxonMethod::kExact ? "exact" : "normal_approx";
}

SignedRankTail signed_rank_tail_serial(std::span<const std::int64_t> doubled_ranks,
                                       std::int64_t doubled_w) {
  const std::size_t n = doubled_ranks.size();
  if (n > 40) throw DomainError("exact enumeration limited to 40 ranks");
  SignedRankTail t;
  t.total = std::uint64_t{1} << n;
  for (std::uint64_t mask = 0; mask < t.total; ++mask) {
    std::int64_t s = 0;
    for (std::size_t i = 0; i < n; ++i) {
      if (mask >> i & 1U) s += doubled_ranks[i];
    }
    if (s >= doubled_w) ++t.at_least;
    if (s <= doubled_w) ++t.at_most;
  }
  return t;
}

SignedRankTail signed_rank_tail(std::span<const std::int64_t> doubled_ranks,
                                std::int64_t doubled_w, int threads) {
  const std::size_t n = doubled_ranks.size();
  if (n > 40) throw DomainError("exact enumeration limited to 40 ranks");
  const std::size_t low_bits = std::min<std::size_t>(n, 10);
  const std::size_t high_bits = n - low_bits;
  auto subset_sums = [&](std::size_t offset, std::size_t bits) {
    std::vector<std::int64_t> sums(std::size_t{1} << bits, 0);
    for (std::size_t m = 1; m < sums.size(); ++m) {
      const auto lowest = static_cast<std::size_t>(__builtin_ctzll(m));
      sums[m] = sums[m & (m - 1)] + doubled_ranks[offset + lowest];
    }
    return sums;
  };
  const auto low = subset_sums(0, low_bits);
  const auto high = subset_sums(low_bits, high_bits);

  std::uint64_t at_least = 0;
  std::uint64_t at_most = 0;
  const auto n_high = static_cast<long long>(high.size());
#pragma omp parallel for num_threads(std::max(threads, 1)) reduction(+ : at_least, at_most) \
    schedule(static) if (threads > 1)
  for (long long h = 0; h < n_high; ++h) {
    const std::int64_t base = high[static_cast<std::size_t>(h)];
    for (std::int64_t l : low) {
      const std::int64_t s = base + l;
      at_least += s >= doubled_w;
      at_most += s <= doubled_w;
    }
  }
  SignedRankTail t;
  t.at_least = at_least;
  t.at_most = at_most;
  t.total = std::uint64_t{1} << n;
  return t;
}

WilcoxonResult wilcoxon_signed_rank(std::span<const double> a, std::span<const double> b,
                                    const WilcoxonOptions& options) {
  if (a.size() != b.size()) {
    throw DomainError("wilcoxon: length mismatch " + std::to_string(a.size()) + " vs " +
                      std::to_string(b.size()));
  }
  std::vector<double> d(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) d[i] = a[i] - b[i];
  return wilcoxon_signed_rank(d, options);
}

WilcoxonResult wilcoxon_signed_rank(std::span<const double> differences,
                                    const WilcoxonOptions& options) {
  std::vector<double> nonzero;
  for (double d : differences) {
    if (std::isnan(d)) throw DomainError("wilcoxon: NaN difference");
    if (d != 0.0) nonzero.push_back(d);
  }
  if (nonzero.empty()) throw DegenerateInputError("wilcoxon: all paired differences are zero");

  const std::size_t n = nonzero.size();
  std::vector<double> magnitudes(n);
  for (std::size_t i = 0; i < n; ++i) magnitudes[i] = std::fabs(nonzero[i]);
  const std::vector<double> ranks = average_ranks(magnitudes);

  WilcoxonResult result;
  result.n_effective = n;
  std::int64_t doubled_w = 0;
  std::vector<std::int64_t> doubled(n);
  for (std::size_t i = 0; i < n; ++i) {
    doubled[i] = std::llround(2.0 * ranks[i]);
    if (nonzero[i] > 0) doubled_w += doubled[i];
  }
  result.w_statistic = static_cast<double>(doubled_w) / 2.0;

  if (n <= options.exact_cutoff) {
    result.method = WilcoxonMethod::kExact;
    const SignedRankTail t = signed_rank_tail(doubled, doubled_w, options.threads);
    const std::uint64_t tail = std::min(t.at_least, t.at_most);
    result.p_value = std::min(1.0, 2.0 * static_cast<double>(tail) / static_cast<double>(t.total));
    return result;
  }

  result.method = WilcoxonMethod::kNormalApprox;
  const double dn = static_cast<double>(n);
  const double mean = dn * (dn + 1.0) / 4.0;
  double tie_term = 0.0;
  {
    std::vector<double> sorted = magnitudes;
    std::sort(sorted.begin(), sorted.end());
    std::size_t i = 0;
    while (i < n) {
      std::size_t j = i;
      while (j + 1 < n && sorted[j + 1] == sorted[i]) ++j;
      const double t = static_cast<double>(j - i + 1);
      tie_term += t * t * t - t;
      i = j + 1;
    }
  }
  const double var = dn * (dn + 1.0) * (2.0 * dn + 1.0) / 24.0 - tie_term / 48.0;
  if (!(var > 0.0)) throw DegenerateInputError("wilcoxon: zero null variance");
  const double dev = std::max(0.0, std::fabs(result.w_statistic - mean) - 0.5);
  const double z = dev / std::sqrt(var);
  const double p = std::erfc(z / std::sqrt(2.0));
  result.p_value = std::clamp(p, std::numeric_limits<double>::min(), 1.0);
  return result;
}

}  // namespace factfilter
