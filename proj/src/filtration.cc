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

#include "factfilter/filtration.h"

#include <openssl/evp.h>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <random>
#include <set>
#include <sstream>
#include <stdexcept>
#include <unordered_set>

#include "factfilter/errors.h"

namespace factfilter {
namespace {

void check_q(double q) {
  if (!(q > 0.0 && q < 1.0)) {
    throw DomainError("drop fraction q must lie in (0, 1), got " + std::to_string(q));
  }
}

}  // namespace

std::size_t keep_count(std::size_t n, double q) {
  check_q(q);
  if (n == 0) return 0;
  const double exact = (1.0 - q) * static_cast<double>(n);
  // Shave a relative 1e-12 so 9.000000000000002 counts as 9.
  auto k = static_cast<std::size_t>(std::ceil(exact * (1.0 - 1e-12)));
  return std::clamp<std::size_t>(k, 1, n);
}

PercentileCut percentile_cut(const std::map<std::string, double>& scores, double q) {
  check_q(q);
  if (scores.empty()) throw DomainError("percentile cut over an empty score set");
  std::vector<std::pair<double, const std::string*>> ranked;
  ranked.reserve(scores.size());
  for (const auto& [id, v] : scores) ranked.emplace_back(v, &id);
  std::sort(ranked.begin(), ranked.end(), [](const auto& a, const auto& b) {
    if (a.first != b.first) return a.first < b.first;
    return *a.second < *b.second;
  });
  const std::size_t keep = keep_count(ranked.size(), q);
  const std::size_t drop = ranked.size() - keep;
  PercentileCut cut;
  cut.threshold = ranked[drop].first;
  cut.kept.reserve(keep);
  for (std::size_t i = drop; i < ranked.size(); ++i) cut.kept.push_back(*ranked[i].second);
  std::sort(cut.kept.begin(), cut.kept.end());
  return cut;
}

std::vector<std::string> percentile_keep_set(const std::map<std::string, double>& scores,
                                             double q) {
  return percentile_cut(scores, q).kept;
}

RatioBounds intersection_bounds(std::size_t n, const std::vector<std::size_t>& keep_counts) {
  RatioBounds b;
  if (n == 0) return b;
  const double dn = static_cast<double>(n);
  std::size_t dropped = 0;
  std::size_t min_keep = n;
  for (std::size_t k : keep_counts) {
    dropped += n - k;
    min_keep = std::min(min_keep, k);
  }
  b.lower = dropped >= n ? 0.0 : static_cast<double>(n - dropped) / dn;
  b.upper = static_cast<double>(min_keep) / dn;
  return b;
}

FilterManifest intersect_filter(const ScoreTable& table, double q) {
  check_q(q);
  if (table.columns.size() < 2) {
    throw ConfigError("intersection filtering needs at least two scorers, got " +
                      std::to_string(table.columns.size()));
  }
  validate_table(table);

  FilterManifest m;
  m.corpus_name = table.corpus_name;
  m.q = q;
  m.n_pairs = table.columns.begin()->second.size();

  std::vector<std::string> kept;
  std::vector<std::size_t> keep_counts;
  bool first = true;
  for (const auto& [name, column] : table.columns) {
    m.scorer_names.push_back(name);
    const auto values = table.values(name);
    if (values.empty()) throw IntegrityError("score column \"" + name + "\" has no valid scores");
    const PercentileCut cut = percentile_cut(values, q);
    m.per_scorer_thresholds[name] = cut.threshold;
    m.per_scorer_kept[name] = cut.kept.size();
    keep_counts.push_back(cut.kept.size());
    const FactualityScore& any = column.begin()->second;
    m.created_with.push_back({name, any.backend_name, any.backend_version});
    if (first) {
      kept = cut.kept;
      first = false;
    } else {
      std::vector<std::string> next;
      std::set_intersection(kept.begin(), kept.end(), cut.kept.begin(), cut.kept.end(),
                            std::back_inserter(next));
      kept.swap(next);
    }
  }
  m.kept_ids = std::move(kept);
  m.selection_ratio = static_cast<double>(m.kept_ids.size()) / static_cast<double>(m.n_pairs);

  const RatioBounds bounds = intersection_bounds(m.n_pairs, keep_counts);
  if (m.selection_ratio < bounds.lower || m.selection_ratio > bounds.upper) {
    throw std::logic_error("selection ratio outside inclusion-exclusion bounds");
  }
  return m;
}

std::vector<std::string> random_selection(const Corpus& corpus, std::size_t size,
                                          std::uint64_t seed) {
  const std::size_t n = corpus.size();
  if (size == 0 || size > n) {
    throw DomainError("random selection size " + std::to_string(size) + " outside [1, " +
                      std::to_string(n) + "]");
  }
  std::mt19937_64 gen(seed);
  std::vector<std::string> out;
  out.reserve(size);
  std::size_t needed = size;
  for (std::size_t i = 0; i < n && needed > 0; ++i) {
    const std::size_t remaining = n - i;
    const double u = static_cast<double>(gen() >> 11) * 0x1.0p-53;
    if (u * static_cast<double>(remaining) < static_cast<double>(needed)) {
      out.push_back(corpus.pairs[i].id);
      --needed;
    }
  }
  return out;
}

Corpus apply_manifest(const Corpus& corpus, const FilterManifest& manifest) {
  if (manifest.corpus_name != corpus.name) {
    throw IntegrityError("manifest is for corpus \"" + manifest.corpus_name + "\", not \"" +
                         corpus.name + "\"");
  }
  if (manifest.kept_ids.empty()) throw IntegrityError("manifest keeps no pairs");
  std::unordered_set<std::string_view> corpus_ids;
  for (const Pair& p : corpus.pairs) corpus_ids.insert(p.id);
  std::vector<std::string> unknown;
  for (const auto& id : manifest.kept_ids) {
    if (!corpus_ids.count(id)) unknown.push_back(id);
  }
  if (!unknown.empty()) {
    std::string listed;
    for (std::size_t i = 0; i < unknown.size() && i < 10; ++i) listed += (i ? ", " : "") + unknown[i];
    throw IntegrityError("manifest keeps " + std::to_string(unknown.size()) +
                         " ids absent from corpus " + corpus.name + ": " + listed);
  }
  const std::unordered_set<std::string_view> keep(manifest.kept_ids.begin(),
                                                  manifest.kept_ids.end());
  const std::string hash = manifest_hash(manifest);
  Corpus out;
  out.name = corpus.name;
  out.schema_version = corpus.schema_version;
  for (const Pair& p : corpus.pairs) {
    if (!keep.count(p.id)) continue;
    Pair copy = p;
    copy.meta[kManifestMetaKey] = hash;
    out.pairs.push_back(std::move(copy));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Manifest persistence

nlohmann::json manifest_to_json(const FilterManifest& m) {
  nlohmann::json created = nlohmann::json::array();
  for (const auto& p : m.created_with) {
    created.push_back({{"scorer", p.scorer},
                       {"backend_name", p.backend_name},
                       {"backend_version", p.backend_version}});
  }
  return nlohmann::json{{"corpus_name", m.corpus_name},
                        {"scorer_names", m.scorer_names},
                        {"q", m.q},
                        {"per_scorer_thresholds", m.per_scorer_thresholds},
                        {"per_scorer_kept", m.per_scorer_kept},
                        {"kept_ids", m.kept_ids},
                        {"n_pairs", m.n_pairs},
                        {"selection_ratio", m.selection_ratio},
                        {"created_with", std::move(created)},
                        {"seedless", m.seedless}};
}

FilterManifest manifest_from_json(const nlohmann::json& j) {
  try {
    FilterManifest m;
    m.corpus_name = j.at("corpus_name").get<std::string>();
    m.scorer_names = j.at("scorer_names").get<std::vector<std::string>>();
    m.q = j.at("q").get<double>();
    m.per_scorer_thresholds = j.at("per_scorer_thresholds").get<std::map<std::string, double>>();
    m.per_scorer_kept = j.value("per_scorer_kept", std::map<std::string, std::size_t>{});
    m.kept_ids = j.at("kept_ids").get<std::vector<std::string>>();
    m.n_pairs = j.at("n_pairs").get<std::size_t>();
    m.selection_ratio = j.at("selection_ratio").get<double>();
    for (const auto& p : j.value("created_with", nlohmann::json::array())) {
      m.created_with.push_back({p.at("scorer").get<std::string>(),
                                p.at("backend_name").get<std::string>(),
                                p.at("backend_version").get<std::string>()});
    }
    m.seedless = j.value("seedless", true);
    if (!std::is_sorted(m.kept_ids.begin(), m.kept_ids.end())) {
      throw IntegrityError("manifest kept_ids are not sorted");
    }
    return m;
  } catch (const nlohmann::json::exception& e) {
    throw DataError(std::string("malformed manifest: ") + e.what());
  }
}

std::string canonical_manifest(const FilterManifest& manifest) {
  return manifest_to_json(manifest).dump(2) + "\n";
}

std::string sha256_hex(std::string_view bytes) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), digest, &len, EVP_sha256(), nullptr) != 1) {
    throw std::runtime_error("SHA-256 digest failed");
  }
  static const char* kHex = "0123456789abcdef";
  std::string out;
  out.reserve(2 * len);
  for (unsigned int i = 0; i < len; ++i) {
    out += kHex[digest[i] >> 4];
    out += kHex[digest[i] & 0xF];
  }
  return out;
}

std::string manifest_hash(const FilterManifest& manifest) {
  return sha256_hex(canonical_manifest(manifest));
}

void save_manifest(const FilterManifest& manifest, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot write manifest " + path.string());
  out << canonical_manifest(manifest);
}

FilterManifest load_manifest(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open manifest " + path.string());
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw DataError("malformed manifest " + path.string() + ": " + e.what());
  }
  return manifest_from_json(j);
}

}  // namespace factfilter
