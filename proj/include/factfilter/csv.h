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

#ifndef FACTFILTER_CSV_H_
#define FACTFILTER_CSV_H_

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace factfilter {

// Fixed "%.10g" rendering so report files are byte-stable across runs.
std::string format_real(double value);
// "%.17g": parses back to the same double. For values other tools re-read.
std::string format_real_exact(double value);

// Quotes a field when it contains a comma, quote or newline.
std::string csv_field(std::string_view field);
std::string csv_line(const std::vector<std::string>& fields);

// Minimal RFC 4180 reader: quoted fields with doubled quotes, no embedded
// newlines. Blank lines are returned as empty rows.
std::vector<std::vector<std::string>> read_csv(std::istream& in);

}  // namespace factfilter

#endif  // FACTFILTER_CSV_H_
