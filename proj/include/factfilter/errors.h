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

#ifndef FACTFILTER_ERRORS_H_
#define FACTFILTER_ERRORS_H_

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace factfilter {

// Root of every error the library throws. The CLI maps the three families
// below onto distinct exit codes: data errors exit 2, backend errors exit 3,
// configuration/usage errors exit 1.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Usage and configuration mistakes (unknown scorer, bad flag value).
class ConfigError : public Error {
 public:
  using Error::Error;
};

// Anything wrong with the data being processed.
class DataError : public Error {
 public:
  using Error::Error;
};

class ParseError : public DataError {
 public:
  ParseError(const std::string& what, std::size_t line)
      : DataError(what + " (line " + std::to_string(line) + ")"), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

class IntegrityError : public DataError {
 public:
  using DataError::DataError;
};

// Argument outside the mathematical domain of an operation (q outside (0,1),
// empty corpus, sample size larger than population).
class DomainError : public DataError {
 public:
  using DataError::DataError;
};

// Input for which a statistic is undefined: zero variance, all-zero paired
// differences, rank-deficient regression design.
class DegenerateInputError : public DataError {
 public:
  using DataError::DataError;
};

// Required ids are missing from a score map or generated-summary set.
class CoverageError : public DataError {
 public:
  CoverageError(const std::string& what, std::vector<std::string> missing);
  const std::vector<std::string>& missing() const { return missing_; }

 private:
  std::vector<std::string> missing_;
};

// Per-pair scoring failure. The corpus driver turns these into sentinel rows.
class ScoringError : public DataError {
 public:
  enum class Kind { kEmptySummary, kZeroArcs, kLength, kOther };
  ScoringError(Kind kind, const std::string& what) : DataError(what), kind_(kind) {}
  Kind kind() const { return kind_; }

 private:
  Kind kind_;
};

const char* to_string(ScoringError::Kind kind);

// Failures inside an inference backend (transport, protocol, limits).
class BackendError : public Error {
 public:
  using Error::Error;
};

// Precondition violated on a backend call.
class PreconditionError : public BackendError {
 public:
  using BackendError::BackendError;
};

// Input longer than the backend's maximum sequence length.
class LengthError : public BackendError {
 public:
  LengthError(std::size_t length, std::size_t limit)
      : BackendError("input of " + std::to_string(length) +
                     " tokens exceeds backend limit of " + std::to_string(limit)),
        length_(length),
        limit_(limit) {}
  std::size_t length() const { return length_; }
  std::size_t limit() const { return limit_; }

 private:
  std::size_t length_;
  std::size_t limit_;
};

}  // namespace factfilter

#endif  // FACTFILTER_ERRORS_H_
