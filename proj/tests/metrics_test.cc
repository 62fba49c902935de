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

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include <gtest/gtest.h>

#include "factfilter/errors.h"
#include "factfilter/filtration.h"
#include "factfilter/metrics.h"
#include "factfilter/mock_backend.h"
#include "factfilter/scorers.h"
#include "test_support.h"

namespace factfilter {
namespace {

using testing::make_pair;

// Counts matched bigrams by repeatedly removing one match from a copy of
// the reference list.
RougeScore oracle_rouge2(const std::vector<std::string>& cand,
                         const std::vector<std::string>& ref) {
  std::vector<std::string> cb, rb;
  for (std::size_t i = 1; i < cand.size(); ++i) cb.push_back(cand[i - 1] + '\x1f' + cand[i]);
  for (std::size_t i = 1; i < ref.size(); ++i) rb.push_back(ref[i - 1] + '\x1f' + ref[i]);
  std::size_t overlap = 0;
  auto pool = rb;
  for (const auto& b : cb) {
    auto it = std::find(pool.begin(), pool.end(), b);
    if (it != pool.end()) {
      pool.erase(it);
      ++overlap;
    }
  }
  RougeScore s;
  if (cb.empty() || rb.empty() || overlap == 0) return s;
  s.precision = static_cast<double>(overlap) / static_cast<double>(cb.size());
  s.recall = static_cast<double>(overlap) / static_cast<double>(rb.size());
  s.f1 = 2 * s.precision * s.recall / (s.precision + s.recall);
  return s;
}

TEST(Rouge2, WorkedExamples) {
  const auto s = rouge2("the cat sat", "the cat slept");
  EXPECT_DOUBLE_EQ(s.precision, 0.5);
  EXPECT_DOUBLE_EQ(s.recall, 0.5);
  EXPECT_DOUBLE_EQ(s.f1, 0.5);
  EXPECT_DOUBLE_EQ(rouge2("a b c d", "a b c d").f1, 1.0);
  EXPECT_DOUBLE_EQ(rouge2("a b", "c d").f1, 0.0);
  EXPECT_DOUBLE_EQ(rouge2("word", "word").f1, 0.0);
  EXPECT_DOUBLE_EQ(rouge2("The Cat sat", "the cat SAT").f1, 1.0);
  // Repeated bigrams are clipped to the reference count.
  const auto clipped = rouge2("a b a b a b", "a b x");
  EXPECT_DOUBLE_EQ(clipped.precision, 1.0 / 5.0);
  EXPECT_DOUBLE_EQ(clipped.recall, 1.0 / 2.0);
}

TEST(Rouge2, MatchesBruteForceOracle) {
  std::mt19937_64 gen(7);
  const std::vector<std::string> vocab = {"a", "b", "c", "d", "e", "f"};
  auto draw = [&] {
    std::vector<std::string> out(gen() % 12);
    for (auto& t : out) t = vocab[gen() % vocab.size()];
    return out;
  };
  auto join = [](const std::vector<std::string>& v) {
    std::string s;
    for (const auto& t : v) s += (s.empty() ? "" : " ") + t;
    return s;
  };
  for (int trial = 0; trial < 1000; ++trial) {
    const auto c = draw(), r = draw();
    const auto got = rouge2(join(c), join(r));
    const auto want = oracle_rouge2(c, r);
    ASSERT_DOUBLE_EQ(got.precision, want.precision) << join(c) << " | " << join(r);
    ASSERT_DOUBLE_EQ(got.recall, want.recall);
    ASSERT_DOUBLE_EQ(got.f1, want.f1);
    ASSERT_DOUBLE_EQ(rouge2(join(r), join(c)).f1, got.f1);
    ASSERT_GE(got.f1, 0.0);
    ASSERT_LE(got.f1, 1.0);
  }
}

TEST(Blanc, MaskPositions) {
  const std::vector<std::string> tokens = {"house", "a", "b", "c", "tree", "x", "y", "z", "car"};
  EXPECT_EQ(blanc_mask_positions(tokens), (std::vector<std::size_t>{0, 4}));
  // Code points, not bytes.
  EXPECT_TRUE(blanc_mask_positions({"\xc3\xa9t\xc3\xa9"}).empty());
  EXPECT_EQ(blanc_mask_positions({"\xc3\xa9t\xc3\xa9s"}).size(), 1u);
}

TEST(Blanc, HelpfulAndUnhelpfulSummaries) {
  const MockBackend backend;
  const std::string doc = "Council members approved funding today. Rivers flooded several towns.";
  EXPECT_DOUBLE_EQ(blanc_help(doc, doc, backend).value, 1.0);
  const auto none = blanc_help(doc, "nothing relevant here", backend);
  EXPECT_DOUBLE_EQ(none.value, 0.0);
  EXPECT_EQ(none.n_sentences, 2u);
  // Masks fall on "Council" and "today." in the first sentence and on
  // "Rivers" and "towns." in the second; the summary recovers one of four.
  EXPECT_DOUBLE_EQ(blanc_help(doc, "Council members", backend).value, 0.25);
  EXPECT_THROW(blanc_help(doc, "   ", backend), ScoringError);
  EXPECT_THROW(blanc_help("a b c. d e f.", "summary", backend), ScoringError);
}

// Ignores the prefix entirely, so the summary cannot help.
class PrefixBlindBackend final : public Backend {
 public:
  BackendDescriptor descriptor() const override { return inner_.descriptor(); }
  std::vector<std::string> tokenize(std::string_view t) const override {
    return inner_.tokenize(t);
  }
  TokenEmbeddings embed_tokens(std::string_view t) const override {
    return inner_.embed_tokens(t);
  }
  std::vector<double> conditional_token_logprobs(std::string_view s,
                                                 std::string_view t) const override {
    return inner_.conditional_token_logprobs(s, t);
  }
  std::vector<double> arc_entailment_probs(std::string_view d,
                                           std::span<const DependencyArc> a) const override {
    return inner_.arc_entailment_probs(d, a);
  }
  double masked_fill_accuracy(std::string_view, std::string_view sentence,
                              std::span<const std::size_t> pos) const override {
    return inner_.masked_fill_accuracy(sentence, sentence, pos) * 0.5;
  }
  std::vector<DependencyArc> parse_dependencies(std::string_view s) const override {
    return inner_.parse_dependencies(s);
  }

 private:
  MockBackend inner_;
};

TEST(Blanc, PrefixBlindModelGivesZero) {
  const PrefixBlindBackend backend;
  const std::string doc = "Council members approved funding today. Rivers flooded several towns.";
  EXPECT_DOUBLE_EQ(blanc_help(doc, doc, backend).value, 0.0);
}

TEST(MetricNames, ParseAndReject) {
  EXPECT_EQ(parse_metric_list("rouge2,blanc"), (std::vector<Metric>{Metric::kRouge2, Metric::kBlanc}));
  EXPECT_THROW(parse_metric_list("blanc,blanc"), ConfigError);
  EXPECT_THROW(parse_metric_list(""), ConfigError);
  EXPECT_THROW(parse_metric("bleu"), ConfigError);
  EXPECT_TRUE(is_reference_based(Metric::kRouge2));
  EXPECT_FALSE(is_reference_based(Metric::kBlanc));
}

Corpus two_test_pairs() {
  Corpus c;
  c.name = "tiny";
  c.pairs = {make_pair("p0", "The cat sat on the mat today.", "the cat sat", Split::kTest),
             make_pair("p1", "The cat slept all afternoon.", "the cat slept", Split::kTest),
             make_pair("p2", "Unused training document.", "unused summary", Split::kTrain)};
  return c;
}

TEST(Evaluate, RougeMeanOverPairs) {
  const Corpus c = two_test_pairs();
  const std::vector<Metric> metrics = {Metric::kRouge2};
  const std::map<std::string, std::string> gen = {{"p0", "the cat sat"}, {"p1", "the cat sat"}};
  const EvalReport r = evaluate_outputs(gen, c, nullptr, metrics, nullptr);
  EXPECT_EQ(r.aggregates.at("rouge2").n, 2u);
  EXPECT_DOUBLE_EQ(r.aggregates.at("rouge2").mean, 0.75);
}

TEST(Evaluate, MissingOutputsAreCoverageError) {
  const Corpus c = two_test_pairs();
  const std::vector<Metric> metrics = {Metric::kRouge2};
  try {
    evaluate_outputs({{"p0", "x y"}}, c, nullptr, metrics, nullptr);
    FAIL();
  } catch (const CoverageError& e) {
    EXPECT_EQ(e.missing(), std::vector<std::string>{"p1"});
  }
}

TEST(Evaluate, BackendRequiredForModelMetrics) {
  const Corpus c = two_test_pairs();
  const std::vector<Metric> metrics = {Metric::kBlanc};
  EXPECT_THROW(evaluate_outputs({{"p0", "a"}, {"p1", "b"}}, c, nullptr, metrics, nullptr),
               ConfigError);
}

class ToyEvaluate : public ::testing::Test {
 protected:
  void SetUp() override {
    corpus_ = load_corpus(testing::toy_dir() / "toy.jsonl");
    const std::vector<ScorerKind> kinds = {ScorerKind::kGreedyPrecision,
                                           ScorerKind::kConditionalLikelihood,
                                           ScorerKind::kArcEntailment};
    manifest_ = intersect_filter(score_corpus(corpus_, kinds, backend_), 0.25);
    for (const auto& p : corpus_.pairs) {
      if (p.split == Split::kTest) references_[p.id] = p.summary;
    }
  }
  MockBackend backend_;
  Corpus corpus_;
  FilterManifest manifest_;
  std::map<std::string, std::string> references_;
  const std::vector<Metric> all_ = {Metric::kGreedy, Metric::kCondll, Metric::kDae,
                                    Metric::kBlanc, Metric::kRouge2};
};

TEST_F(ToyEvaluate, ReferenceMetricRestrictedToKeptPairs) {
  const EvalReport r = evaluate_outputs(references_, corpus_, &manifest_, all_, &backend_);
  std::size_t kept_test = 0;
  for (const auto& id : manifest_.kept_ids) kept_test += references_.count(id);
  EXPECT_EQ(r.aggregates.at("rouge2").n, kept_test);
  EXPECT_EQ(r.aggregates.at("blanc").n + r.aggregates.at("blanc").n_failed, references_.size());
  EXPECT_LT(kept_test, references_.size());
  EXPECT_DOUBLE_EQ(r.aggregates.at("rouge2").mean, 1.0);
}

TEST_F(ToyEvaluate, AggregatesAreRowMeansAndThreadIndependent) {
  const EvalReport one = evaluate_outputs(references_, corpus_, &manifest_, all_, &backend_);
  const EvalReport four =
      evaluate_outputs(references_, corpus_, &manifest_, all_, &backend_, EvalOptions{4});
  std::ostringstream a, b;
  write_eval_csv(one, a);
  write_eval_csv(four, b);
  EXPECT_EQ(a.str(), b.str());
  for (const auto& [metric, values] : one.values()) {
    double sum = 0;
    for (const auto& [id, v] : values) sum += v;
    EXPECT_EQ(one.aggregates.at(metric).n, values.size());
    EXPECT_NEAR(one.aggregates.at(metric).mean, sum / values.size(), 1e-12);
  }
}

TEST_F(ToyEvaluate, CsvRoundTripIsExact) {
  const EvalReport r = evaluate_outputs(references_, corpus_, &manifest_, all_, &backend_);
  std::ostringstream out;
  write_eval_csv(r, out);
  std::istringstream in(out.str());
  const EvalReport back = read_eval_csv(in);
  EXPECT_EQ(back.metric_order, r.metric_order);
  EXPECT_EQ(back.values(), r.values());
  for (const auto& [metric, agg] : r.aggregates) {
    EXPECT_EQ(back.aggregates.at(metric).mean, agg.mean);
    EXPECT_EQ(back.aggregates.at(metric).n_failed, agg.n_failed);
  }
}

TEST_F(ToyEvaluate, ManifestForOtherCorpusRejected) {
  FilterManifest other = manifest_;
  other.corpus_name = "elsewhere";
  EXPECT_THROW(evaluate_outputs(references_, corpus_, &other, all_, &backend_), IntegrityError);
}

TEST(EvalSummary, LayoutAndScaling) {
  EvalReport r;
  r.metric_order = {"rouge2", "blanc"};
  r.aggregates["rouge2"] = {4, 0, 0.125};
  r.aggregates["blanc"] = {5, 1, 0.5};
  EXPECT_EQ(eval_summary_header(),
            "label,greedy,condll,dae,blanc,rouge2,n_greedy,n_condll,n_dae,n_blanc,n_rouge2\n");
  EXPECT_EQ(eval_summary_row(r, "full"), "full,,,,0.5,12.5,,,,5,4\n");
}

}  // namespace
}  // namespace factfilter
