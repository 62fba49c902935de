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

#include "factfilter/errors.h"

namespace factfilter {
namespace {

std::string with_ids(const std::string& what, const std::vector<std::string>& ids) {
  std::string out = what;
  const std::size_t shown = ids.size() < 10 ? ids.size() : 10;
  if (shown == 0) return out;
  out += ": ";
  for (std::size_t i = 0; i < shown; ++i) {
    if (i) out += ", ";
    out += ids[i];
  }
  if (ids.size() > shown) out += ", ... (" + std::to_string(ids.size()) + " total)";
  return out;
}

}  // namespace

CoverageError::CoverageError(const std::string& what, std::vector<std::string> missing)
    : DataError(with_ids(what, missing)), missing_(std::move(missing)) {}

const char* to_string(ScoringError::Kind kind) {
  switch (kind) {
    case ScoringError::Kind::kEmptySummary:
      return "empty_summary";
    case ScoringError::Kind::kZeroArcs:
      return "zero_arcs";
    case ScoringError::Kind::kLength:
      return "length";
    case ScoringError::Kind::kOther:
      break;
  }
  return "other";
}

}  // namespace factfilter
