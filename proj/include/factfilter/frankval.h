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

// Validation of factuality scorers against human annotations with
// per-category error flags: partial correlation per dataset slice, and the
// correlation change when one error category's labels are flipped.

#ifndef FACTFILTER_FRANKVAL_H_
#define FACTFILTER_FRANKVAL_H_

#include <array>
#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "factfilter/stats.h"
#include "json.hpp"

namespace factfilter {

enum class SourceDataset { kCnnDm, kXsum };
std::string_view to_string(SourceDataset dataset);
// Accepts "cnndm", "cnn/dm", "cnn_dm", "xsum" in any case.
SourceDataset parse_dataset(std::string_view name);

enum class ErrorCategory { kSemanticFrame = 0, kDiscourse = 1, kContentVerifiability = 2 };
inline constexpr std::array<ErrorCategory, 3> kAllCategories = {
    ErrorCategory::kSemanticFrame, ErrorCategory::kDiscourse, ErrorCategory::kContentVerifiability};
std::string_view to_string(ErrorCategory category);
ErrorCategory parse_category(std::string_view name);

using CategoryFlags = std::array<bool, 3>;

struct FrankAnnotation {
  std::string summary_id;
  SourceDataset source_dataset = SourceDataset::kCnnDm;
  std::string system_id;
  double factuality = 1.0;
  CategoryFlags flags{};

  // As loaded; flips recompose factuality from these.
  double original_factuality = 1.0;
  CategoryFlags original_flags{};

  bool flagged(ErrorCategory c) const { return flags[static_cast<std::size_t>(c)]; }
  bool any_flag() const { return flags[0] || flags[1] || flags[2]; }
};

FrankAnnotation make_annotation(std::string summary_id, SourceDataset dataset,
                                std::string system_id, double factuality, CategoryFlags flags);

// Field names of the annotation file. Defaults match the bundled adapter
// layout; override per field to read other exports.
struct FrankColumnMap {
  std::string summary_id = "summary_id";
  std::string dataset = "dataset";
  std::string system = "system";
  std::string factuality = "factuality";
  std::string semantic_frame = "semantic_frame";
  std::string discourse = "discourse";
  std::string content_verifiability = "content_verifiability";

  static FrankColumnMap from_json(const nlohmann::json& j);
};

// Reads a JSONL file or a single JSON array of records. Flags may be
// booleans or 0/1. Records with no flag but factuality != 1 are rejected
// together in one IntegrityError listing their ids.
std::vector<FrankAnnotation> read_frank(std::istream& in, const FrankColumnMap& columns = {});
std::vector<FrankAnnotation> load_frank(const std::filesystem::path& path,
                                        const FrankColumnMap& columns = {});

// Negates one category's flag on every annotation and recomposes
// factuality: 1 when nothing is flagged; the original factuality when some
// originally-set flag is still set; 0 when only newly-set flags remain.
// An involution.
std::vector<FrankAnnotation> flip_labels(std::span<const FrankAnnotation> annotations,
                                         ErrorCategory category);

enum class CovariateSpec { kNone, kSystemIndicators };
enum class CorrelationMode { kPearson, kRank };
std::string_view to_string(CovariateSpec spec);
std::string_view to_string(CorrelationMode mode);
CovariateSpec parse_covariates(std::string_view name);
CorrelationMode parse_mode(std::string_view name);

struct ValidationOptions {
  CovariateSpec covariates = CovariateSpec::kSystemIndicators;
  CorrelationMode mode = CorrelationMode::kPearson;
  double min_coverage = 0.95;
};

// One-hot columns for every system but the alphabetically first.
CovariateMatrix system_indicators(std::span<const FrankAnnotation* const> sample);

// Partial correlation of scores with human factuality over the slice
// (all datasets when slice is empty). Annotations without a score are
// dropped; below min_coverage that is a CoverageError.
PartialCorrelationResult validate_scorer(const std::map<std::string, double>& scores,
                                         std::span<const FrankAnnotation> annotations,
                                         std::optional<SourceDataset> slice,
                                         const ValidationOptions& options = {});

struct FlipRow {
  std::string scorer;
  SourceDataset dataset = SourceDataset::kCnnDm;
  ErrorCategory category = ErrorCategory::kSemanticFrame;
  double r_original = 0.0;
  double r_flipped = 0.0;
  double delta = 0.0;  // r_original - r_flipped
};

struct FlipReport {
  std::vector<FlipRow> rows;  // ordered by scorer, dataset, category
};

// One row per (scorer, dataset present in annotations, category). Cells are
// independent and run on up to `threads` threads.
FlipReport flip_analysis(const std::map<std::string, std::map<std::string, double>>& scores,
                         std::span<const FrankAnnotation> annotations,
                         const ValidationOptions& options = {}, int threads = 1);

// scorer,dataset,category,r_original,r_flipped,delta
void write_flip_csv(const FlipReport& report, std::ostream& out);

}  // namespace factfilter

#endif  // FACTFILTER_FRANKVAL_H_
