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

#include "factfilter/frankval.h"

#include <algorithm>
#include <fstream>
#include <istream>
#include <ostream>
#include <set>
#include <sstream>
#include <stdexcept>

#include "factfilter/csv.h"
#include "factfilter/errors.h"
#include "factfilter/parallel.h"
#include "factfilter/text.h"

namespace factfilter {

std::string_view to_string(SourceDataset dataset) {
  return dataset == SourceDataset::kCnnDm ? "cnndm" : "xsum";
}

SourceDataset parse_dataset(std::string_view name) {
  const std::string lower = ascii_lower(name);
  if (lower == "cnndm" || lower == "cnn/dm" || lower == "cnn_dm" || lower == "cnn-dm") {
    return SourceDataset::kCnnDm;
  }
  if (lower == "xsum") return SourceDataset::kXsum;
  throw DataError("unknown source dataset \"" + std::string(name) + "\"");
}

std::string_view to_string(ErrorCategory category) {
  switch (category) {
    case ErrorCategory::kSemanticFrame:
      return "semantic_frame";
    case ErrorCategory::kDiscourse:
      return "discourse";
    case ErrorCategory::kContentVerifiability:
      return "content_verifiability";
  }
  return "semantic_frame";
}

ErrorCategory parse_category(std::string_view name) {
  for (ErrorCategory c : kAllCategories) {
    if (to_string(c) == name) return c;
  }
  throw ConfigError("unknown error category \"" + std::string(name) + "\"");
}

std::string_view to_string(CovariateSpec spec) {
  return spec == CovariateSpec::kNone ? "none" : "system";
}

std::string_view to_string(CorrelationMode mode) {
  return mode == CorrelationMode::kPearson ? "pearson" : "rank";
}

CovariateSpec parse_covariates(std::string_view name) {
  if (name == "none") return CovariateSpec::kNone;
  if (name == "system") return CovariateSpec::kSystemIndicators;
  throw ConfigError("unknown covariate spec \"" + std::string(name) + "\" (none, system)");
}

CorrelationMode parse_mode(std::string_view name) {
  if (name == "pearson") return CorrelationMode::kPearson;
  if (name == "rank") return CorrelationMode::kRank;
  throw ConfigError("unknown correlation mode \"" + std::string(name) + "\" (pearson, rank)");
}

FrankAnnotation make_annotation(std::string summary_id, SourceDataset dataset,
                                std::string system_id, double factuality, CategoryFlags flags) {
  FrankAnnotation a;
  a.summary_id = std::move(summary_id);
  a.source_dataset = dataset;
  a.system_id = std::move(system_id);
  a.factuality = factuality;
  a.flags = flags;
  a.original_factuality = factuality;
  a.original_flags = flags;
  return a;
}

FrankColumnMap FrankColumnMap::from_json(const nlohmann::json& j) {
  FrankColumnMap m;
  m.summary_id = j.value("summary_id", m.summary_id);
  m.dataset = j.value("dataset", m.dataset);
  m.system = j.value("system", m.system);
  m.factuality = j.value("factuality", m.factuality);
  m.semantic_frame = j.value("semantic_frame", m.semantic_frame);
  m.discourse = j.value("discourse", m.discourse);
  m.content_verifiability = j.value("content_verifiability", m.content_verifiability);
  return m;
}

namespace {

bool read_flag(const nlohmann::json& record, const std::string& key, std::size_t line) {
  auto it = record.find(key);
  if (it == record.end()) throw ParseError("missing field \"" + key + "\"", line);
  if (it->is_boolean()) return it->get<bool>();
  if (it->is_number()) {
    const double v = it->get<double>();
    if (v == 0.0) return false;
    if (v == 1.0) return true;
  }
  throw ParseError("field \"" + key + "\" is not a boolean or 0/1", line);
}

std::string read_string(const nlohmann::json& record, const std::string& key, std::size_t line) {
  auto it = record.find(key);
  if (it == record.end()) throw ParseError("missing field \"" + key + "\"", line);
  if (it->is_string()) return it->get<std::string>();
  if (it->is_number_integer()) return std::to_string(it->get<long long>());
  throw ParseError("field \"" + key + "\" is not a string", line);
}

FrankAnnotation parse_record(const nlohmann::json& record, const FrankColumnMap& cols,
                             std::size_t line) {
  if (!record.is_object()) throw ParseError("annotation record is not an object", line);
  const std::string id = read_string(record, cols.summary_id, line);
  SourceDataset dataset;
  try {
    dataset = parse_dataset(read_string(record, cols.dataset, line));
  } catch (const ParseError&) {
    throw;
  } catch (const DataError& e) {
    throw ParseError(e.what(), line);
  }
  const std::string system = read_string(record, cols.system, line);
  auto f = record.find(cols.factuality);
  if (f == record.end() || !f->is_number()) {
    throw ParseError("field \"" + cols.factuality + "\" missing or not a number", line);
  }
  const double factuality = f->get<double>();
  if (!(factuality >= 0.0 && factuality <= 1.0)) {
    throw ParseError("factuality outside [0, 1]", line);
  }
  const CategoryFlags flags{read_flag(record, cols.semantic_frame, line),
                            read_flag(record, cols.discourse, line),
                            read_flag(record, cols.content_verifiability, line)};
  return make_annotation(id, dataset, system, factuality, flags);
}

}  // namespace

std::vector<FrankAnnotation> read_frank(std::istream& in, const FrankColumnMap& columns) {
  std::ostringstream buffer;
  buffer << in.rdbuf();
  const std::string content = buffer.str();
  const auto first = content.find_first_not_of(" \t\r\n");

  std::vector<FrankAnnotation> out;
  if (first != std::string::npos && content[first] == '[') {
    nlohmann::json arr;
    try {
      arr = nlohmann::json::parse(content);
    } catch (const nlohmann::json::parse_error& e) {
      throw ParseError(std::string("malformed annotation array: ") + e.what(), 1);
    }
    std::size_t index = 0;
    for (const auto& record : arr) out.push_back(parse_record(record, columns, ++index));
  } else {
    std::istringstream lines(content);
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(lines, line)) {
      ++line_no;
      if (!has_content(line)) continue;
      nlohmann::json record;
      try {
        record = nlohmann::json::parse(line);
      } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(std::string("malformed JSON: ") + e.what(), line_no);
      }
      out.push_back(parse_record(record, columns, line_no));
    }
  }

  std::vector<std::string> violating;
  std::set<std::string> seen;
  for (const auto& a : out) {
    if (!seen.insert(a.summary_id).second) {
      throw IntegrityError("duplicate annotation id \"" + a.summary_id + "\"");
    }
    if (!a.any_flag() && a.factuality != 1.0) violating.push_back(a.summary_id);
  }
  if (!violating.empty()) {
    std::string listed;
    for (std::size_t i = 0; i < violating.size(); ++i) listed += (i ? ", " : "") + violating[i];
    throw IntegrityError("annotations with no error flag must have factuality 1: " + listed);
  }
  return out;
}

std::vector<FrankAnnotation> load_frank(const std::filesystem::path& path,
                                        const FrankColumnMap& columns) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open annotation file " + path.string());
  return read_frank(in, columns);
}

std::vector<FrankAnnotation> flip_labels(std::span<const FrankAnnotation> annotations,
                                         ErrorCategory category) {
  const auto c = static_cast<std::size_t>(category);
  std::vector<FrankAnnotation> out(annotations.begin(), annotations.end());
  for (auto& a : out) {
    a.flags[c] = !a.flags[c];
    bool kept_original = false;
    for (std::size_t k = 0; k < a.flags.size(); ++k) {
      kept_original = kept_original || (a.flags[k] && a.original_flags[k]);
    }
    if (!a.any_flag()) {
      a.factuality = 1.0;
    } else if (kept_original) {
      a.factuality = a.original_factuality;
    } else {
      a.factuality = 0.0;
    }
  }
  return out;
}

CovariateMatrix system_indicators(std::span<const FrankAnnotation* const> sample) {
  std::set<std::string> systems;
  for (const auto* a : sample) systems.insert(a->system_id);
  CovariateMatrix z;
  if (systems.size() < 2) return z;
  for (auto it = std::next(systems.begin()); it != systems.end(); ++it) {
    std::vector<double> column(sample.size());
    for (std::size_t i = 0; i < sample.size(); ++i) {
      column[i] = sample[i]->system_id == *it ? 1.0 : 0.0;
    }
    z.push_back(std::move(column));
  }
  return z;
}

namespace {

// Annotations of the slice that carry a score, in input order.
std::vector<std::size_t> covered_indices(const std::map<std::string, double>& scores,
                                         std::span<const FrankAnnotation> annotations,
                                         std::optional<SourceDataset> slice,
                                         double min_coverage) {
  std::vector<std::size_t> covered;
  std::vector<std::string> missing;
  std::size_t in_slice = 0;
  for (std::size_t i = 0; i < annotations.size(); ++i) {
    const auto& a = annotations[i];
    if (slice && a.source_dataset != *slice) continue;
    ++in_slice;
    if (scores.count(a.summary_id)) {
      covered.push_back(i);
    } else {
      missing.push_back(a.summary_id);
    }
  }
  if (in_slice == 0) throw DomainError("no annotations in the requested slice");
  const double coverage = static_cast<double>(covered.size()) / static_cast<double>(in_slice);
  if (coverage < min_coverage) {
    throw CoverageError("score coverage " + std::to_string(coverage) + " below " +
                            std::to_string(min_coverage),
                        std::move(missing));
  }
  return covered;
}

PartialCorrelationResult correlate(const std::map<std::string, double>& scores,
                                   std::span<const FrankAnnotation> annotations,
                                   const std::vector<std::size_t>& sample,
                                   const ValidationOptions& options) {
  std::vector<double> x;
  std::vector<double> y;
  std::vector<const FrankAnnotation*> rows;
  x.reserve(sample.size());
  y.reserve(sample.size());
  for (std::size_t i : sample) {
    const auto& a = annotations[i];
    x.push_back(scores.at(a.summary_id));
    y.push_back(a.factuality);
    rows.push_back(&a);
  }
  if (options.mode == CorrelationMode::kRank) {
    x = average_ranks(x);
    y = average_ranks(y);
  }
  const CovariateMatrix z = options.covariates == CovariateSpec::kSystemIndicators
                                ? system_indicators(rows)
                                : CovariateMatrix{};
  return partial_pearson(x, y, z);
}

}  // namespace

PartialCorrelationResult validate_scorer(const std::map<std::string, double>& scores,
                                         std::span<const FrankAnnotation> annotations,
                                         std::optional<SourceDataset> slice,
                                         const ValidationOptions& options) {
  const auto sample = covered_indices(scores, annotations, slice, options.min_coverage);
  return correlate(scores, annotations, sample, options);
}

FlipReport flip_analysis(const std::map<std::string, std::map<std::string, double>>& scores,
                         std::span<const FrankAnnotation> annotations,
                         const ValidationOptions& options, int threads) {
  std::set<SourceDataset> datasets;
  for (const auto& a : annotations) datasets.insert(a.source_dataset);

  std::array<std::vector<FrankAnnotation>, 3> flipped;
  for (ErrorCategory c : kAllCategories) {
    flipped[static_cast<std::size_t>(c)] = flip_labels(annotations, c);
  }

  FlipReport report;
  for (const auto& [scorer, s] : scores) {
    for (SourceDataset d : datasets) {
      for (ErrorCategory c : kAllCategories) report.rows.push_back({scorer, d, c, 0, 0, 0});
    }
  }
  parallel_for(report.rows.size(), threads, [&](std::size_t i) {
    FlipRow& row = report.rows[i];
    const auto& s = scores.at(row.scorer);
    const auto sample = covered_indices(s, annotations, row.dataset, options.min_coverage);
    const auto& alt = flipped[static_cast<std::size_t>(row.category)];
    // Same indices into both vectors, so both correlations see one id set.
    for (std::size_t k : sample) {
      if (alt[k].summary_id != annotations[k].summary_id) {
        throw std::logic_error("flip changed the sample");
      }
    }
    row.r_original = correlate(s, annotations, sample, options).r;
    row.r_flipped = correlate(s, alt, sample, options).r;
    row.delta = row.r_original - row.r_flipped;
  });
  return report;
}

void write_flip_csv(const FlipReport& report, std::ostream& out) {
  out << csv_line({"scorer", "dataset", "category", "r_original", "r_flipped", "delta"});
  for (const auto& r : report.rows) {
    out << csv_line({r.scorer, std::string(to_string(r.dataset)), std::string(to_string(r.category)),
                     format_real(r.r_original), format_real(r.r_flipped), format_real(r.delta)});
  }
}

}  // namespace factfilter
