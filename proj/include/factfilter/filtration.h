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

// Corpus filtration: drop the lowest-scored fraction q under each scorer
// and keep the pairs that survive every scorer.

#ifndef FACTFILTER_FILTRATION_H_
#define FACTFILTER_FILTRATION_H_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "factfilter/corpus.h"
#include "factfilter/scorers.h"
#include "json.hpp"

namespace factfilter {

inline constexpr double kDefaultDropFraction = 0.25;

// ceil((1 - q) * n), computed so that products that are integral in exact
// arithmetic (0.9 * 10) do not round up. Always in [1, n] for n > 0.
std::size_t keep_count(std::size_t n, double q);

struct PercentileCut {
  std::vector<std::string> kept;  // sorted ascending
  double threshold = 0.0;         // lowest kept score
};

// Keeps the keep_count(n, q) highest scores. Ranking is by (score, id)
// ascending and the top entries are kept, so among tied scores at the cut
// the smaller ids are dropped first. Sentinels must already be removed.
// Throws DomainError if q is outside (0, 1) or scores is empty.
PercentileCut percentile_cut(const std::map<std::string, double>& scores, double q);
std::vector<std::string> percentile_keep_set(const std::map<std::string, double>& scores,
                                             double q);

struct ScorerProvenance {
  std::string scorer;
  std::string backend_name;
  std::string backend_version;
  friend bool operator==(const ScorerProvenance&, const ScorerProvenance&) = default;
};

struct FilterManifest {
  std::string corpus_name;
  std::vector<std::string> scorer_names;
  double q = kDefaultDropFraction;
  std::map<std::string, double> per_scorer_thresholds;
  std::map<std::string, std::size_t> per_scorer_kept;
  std::vector<std::string> kept_ids;  // sorted ascending
  std::size_t n_pairs = 0;
  double selection_ratio = 0.0;
  std::vector<ScorerProvenance> created_with;
  bool seedless = true;

  friend bool operator==(const FilterManifest&, const FilterManifest&) = default;
};

struct RatioBounds {
  double lower = 0.0;
  double upper = 1.0;
};

// Inclusion-exclusion bounds on |intersection| / n given each scorer's
// keep count: [1 - sum(n - k_i) / n, min(k_i) / n], lower clamped at 0.
// With no failed pairs and integral (1 - q) n this is [1 - k q, 1 - q].
RatioBounds intersection_bounds(std::size_t n, const std::vector<std::size_t>& keep_counts);

// Intersection of every column's percentile keep set. Percentiles are taken
// over each column's non-sentinel values; pairs with a sentinel in any
// column are never kept. Requires >= 2 columns covering the same pairs.
// Throws IntegrityError when a column has no values.
FilterManifest intersect_filter(const ScoreTable& table, double q);

// Uniform sample without replacement, returned in corpus order. Uses
// selection sampling driven by std::mt19937_64, so the output is identical
// on every platform for the same (corpus, size, seed).
std::vector<std::string> random_selection(const Corpus& corpus, std::size_t size,
                                          std::uint64_t seed);

// Metadata key added to every pair of a filtered corpus.
inline constexpr const char* kManifestMetaKey = "filter_manifest_sha256";

// Filtered corpus in original order. Throws IntegrityError on a corpus
// name mismatch, unknown kept ids, or an empty selection.
Corpus apply_manifest(const Corpus& corpus, const FilterManifest& manifest);

nlohmann::json manifest_to_json(const FilterManifest& manifest);
FilterManifest manifest_from_json(const nlohmann::json& j);
// Sorted keys, two-space indent, trailing newline.
std::string canonical_manifest(const FilterManifest& manifest);
// Hex SHA-256 of canonical_manifest().
std::string manifest_hash(const FilterManifest& manifest);
std::string sha256_hex(std::string_view bytes);

void save_manifest(const FilterManifest& manifest, const std::filesystem::path& path);
FilterManifest load_manifest(const std::filesystem::path& path);

}  // namespace factfilter

#endif  // FACTFILTER_FILTRATION_H_
