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
#include <random>
#include <sstream>

#include <gtest/gtest.h>

#include "factfilter/corpus.h"
#include "factfilter/errors.h"
#include "test_support.h"

namespace factfilter {
namespace {

using testing::make_pair;

std::string record(const std::string& id, const std::string& doc = "some document text",
                   const std::string& sum = "a summary", const std::string& split = "train") {
  return R"({"id":")" + id + R"(","document":")" + doc + R"(","summary":")" + sum +
         R"(","split":")" + split + R"(","meta":{"source":"unit","url":"http://x/)" + id +
         R"("}})" + "\n";
}

TEST(LoadCorpus, PreservesOrderAndMeta) {
  std::istringstream in(record("c") + record("a") + record("b", "d", "s", "test"));
  const Corpus corpus = read_corpus(in, "unit");
  ASSERT_EQ(corpus.size(), 3u);
  EXPECT_EQ(corpus.ids(), (std::vector<std::string>{"c", "a", "b"}));
  EXPECT_EQ(corpus.pairs[2].split, Split::kTest);
  EXPECT_EQ(corpus.pairs[1].meta["url"], "http://x/a");
  EXPECT_EQ(corpus.name, "unit");
}

TEST(LoadCorpus, DuplicateIdNamesTheId) {
  std::istringstream in(record("a") + record("b") + record("c") + record("d") + record("a"));
  try {
    read_corpus(in, "dup");
    FAIL() << "expected IntegrityError";
  } catch (const IntegrityError& e) {
    const std::string what = e.what();
    EXPECT_NE(what.find("\"a\""), std::string::npos) << what;
    EXPECT_NE(what.find("1"), std::string::npos) << what;
    EXPECT_NE(what.find("5"), std::string::npos) << what;
  }
}

TEST(LoadCorpus, MalformedLineCarriesLineNumber) {
  std::istringstream in(record("a") + "{not json\n");
  try {
    read_corpus(in, "bad");
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 2u);
  }
  std::istringstream missing_field(R"({"id":"a","document":"d","split":"train"})" "\n");
  EXPECT_THROW(read_corpus(missing_field, "bad"), ParseError);
  std::istringstream bad_split(record("a", "d", "s", "dev"));
  EXPECT_THROW(read_corpus(bad_split, "bad"), DataError);
}

TEST(LoadCorpus, BlankTextsAreRejected) {
  std::istringstream in(record("a", "   ", "s"));
  try {
    read_corpus(in, "bad");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 1u);
  }
}

TEST(LoadCorpus, EmptyFileIsAnEmptyCorpus) {
  std::istringstream in("");
  EXPECT_TRUE(read_corpus(in, "empty").empty());
}

TEST(LoadCorpus, FileNameGivesCorpusName) {
  testing::TempDir dir;
  testing::write_file(dir.path() / "news.jsonl", record("a"));
  EXPECT_EQ(load_corpus(dir.path() / "news.jsonl").name, "news");
  EXPECT_THROW(load_corpus(dir.path() / "absent.jsonl"), DataError);
}

TEST(LoadCorpus, RoundTripIsStable) {
  std::istringstream in(record("z", "doc \\u00e9 text", "sum") + record("y"));
  const Corpus first = read_corpus(in, "rt");
  std::stringstream buf;
  write_corpus(first, buf);
  const std::string once = buf.str();
  const Corpus second = read_corpus(buf, "rt");
  std::stringstream buf2;
  write_corpus(second, buf2);
  EXPECT_EQ(once, buf2.str());
  EXPECT_EQ(second.ids(), first.ids());
  EXPECT_EQ(second.pairs[0].document, first.pairs[0].document);
}

TEST(CorpusStats, MeansOverWordCounts) {
  Corpus c;
  c.name = "two";
  c.pairs = {make_pair("a", "w w w w", "x"), make_pair("b", "w w w w w w", "x y z")};
  const CorpusStats s = corpus_stats(c);
  EXPECT_EQ(s.n_pairs, 2u);
  EXPECT_DOUBLE_EQ(s.mean_doc_words, 5.0);
  EXPECT_DOUBLE_EQ(s.mean_sum_words, 2.0);
  EXPECT_EQ(s.per_split_counts.at(Split::kTrain), 2u);
}

TEST(CorpusStats, SinglePairAndEmpty) {
  Corpus c;
  c.pairs = {make_pair("a", "one two three", "four")};
  const CorpusStats s = corpus_stats(c);
  EXPECT_DOUBLE_EQ(s.mean_doc_words, 3.0);
  EXPECT_DOUBLE_EQ(s.mean_sum_words, 1.0);
  EXPECT_THROW(corpus_stats(Corpus{}), DomainError);
}

TEST(CorpusStats, PermutationInvariant) {
  Corpus c;
  std::mt19937 gen(11);
  for (int i = 0; i < 40; ++i) {
    std::string doc, sum;
    for (int w = 0, n = 1 + static_cast<int>(gen() % 30); w < n; ++w) doc += "word ";
    for (int w = 0, n = 1 + static_cast<int>(gen() % 7); w < n; ++w) sum += "s ";
    c.pairs.push_back(make_pair("p" + std::to_string(i), doc, sum,
                                static_cast<Split>(gen() % 3)));
  }
  const CorpusStats base = corpus_stats(c);
  for (int trial = 0; trial < 5; ++trial) {
    std::shuffle(c.pairs.begin(), c.pairs.end(), gen);
    const CorpusStats s = corpus_stats(c);
    EXPECT_EQ(stats_csv_row("c", "full", s, std::nullopt),
              stats_csv_row("c", "full", base, std::nullopt));
  }
}

TEST(CorpusStats, ReportRowLabelsSplits) {
  Corpus c;
  c.pairs = {make_pair("a", "d d", "s", Split::kTrain), make_pair("b", "d d d d", "s s", Split::kTest)};
  const CorpusStats s = corpus_stats(c);
  EXPECT_EQ(s.splits_label(), "train+test");
  EXPECT_EQ(stats_csv_header(),
            "corpus,selection,splits,n_samples,selection_ratio,mean_doc_words,mean_summary_words\n");
  EXPECT_EQ(stats_csv_row("toy", "full", s, std::nullopt), "toy,full,train+test,2,*,3,1.5\n");
  EXPECT_EQ(stats_csv_row("toy", "filtered", s, 0.5), "toy,filtered,train+test,2,0.5,3,1.5\n");
}

TEST(SelectSplit, KeepsOrder) {
  Corpus c;
  c.name = "s";
  c.pairs = {make_pair("a", "d", "s", Split::kTest), make_pair("b", "d", "s", Split::kTrain),
             make_pair("c", "d", "s", Split::kTest)};
  EXPECT_EQ(select_split(c, Split::kTest).ids(), (std::vector<std::string>{"a", "c"}));
  EXPECT_EQ(select_split(c, std::nullopt).size(), 3u);
}

TEST(ToyCorpus, ShapeOfBundledData) {
  const Corpus toy = load_corpus(testing::toy_dir() / "toy.jsonl");
  EXPECT_EQ(toy.size(), 50u);
  const CorpusStats s = corpus_stats(toy);
  EXPECT_EQ(s.per_split_counts.at(Split::kTrain), 30u);
  EXPECT_EQ(s.per_split_counts.at(Split::kValidation), 10u);
  EXPECT_EQ(s.per_split_counts.at(Split::kTest), 10u);
}

}  // namespace
}  // namespace factfilter
