// Copyright 2026 The Guwen Authors.
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

#include "guwen/keywords.hpp"

#include <gtest/gtest.h>

#include <cmath>

#include "oracles.hpp"

namespace guwen::keywords {
namespace {

using Words = std::vector<std::string>;

DocumentStats doc_of(const std::string& id, const Words& words) {
  const std::vector<Words> sentences{words};
  return count_terms(id, sentences);
}

TEST(TermFrequency, Examples) {
  const auto d = doc_of("d", {"甘草", "人參", "甘草"});
  EXPECT_DOUBLE_EQ(term_frequency("甘草", d), 2.0 / 3.0);
  EXPECT_EQ(term_frequency("黃芪", d), 0.0);
  EXPECT_EQ(term_frequency("a", doc_of("s", {"a"})), 1.0);
  EXPECT_THROW(term_frequency("a", doc_of("e", {})), DataError);
}

TEST(TermFrequency, PunctuationIsNotATerm) {
  const auto d = doc_of("d", {"甘草", "，", "也", "。"});
  EXPECT_EQ(d.total, 2u);
  EXPECT_EQ(d.counts.count("，"), 0u);
}

TEST(InverseDocumentFrequency, Examples) {
  std::vector<DocumentStats> docs{doc_of("a", {"x", "y", "z"}), doc_of("b", {"x", "z"}),
                                  doc_of("c", {"z"})};
  const auto c = corpus_stats(docs);
  EXPECT_EQ(inverse_document_frequency("x", c), std::log(3.0 / 3.0));
  EXPECT_NEAR(inverse_document_frequency("y", c), 0.4054651, 1e-7);
  EXPECT_NEAR(inverse_document_frequency("z", c), -0.2876821, 1e-7);
  EXPECT_NEAR(inverse_document_frequency("never", c), std::log(3.0), 1e-15);
  EXPECT_THROW(inverse_document_frequency("x", corpus_stats({})), DataError);
}

TEST(Tfidf, Examples) {
  std::vector<DocumentStats> docs{doc_of("d", {"a", "b"}), doc_of("e", {"b"}),
                                  doc_of("f", {"c"})};
  const auto c = corpus_stats(docs);
  EXPECT_NEAR(tfidf("a", docs[0], c), 0.2027326, 1e-7);
  EXPECT_EQ(tfidf("c", docs[0], c), 0.0);
  // df = N - 1 forces zero.
  EXPECT_EQ(tfidf("b", docs[0], c), 0.0);
}

TEST(WordFrequencyTable, Examples) {
  const auto d = doc_of("d", {"甘草", "甘草", "人參"});
  EXPECT_EQ(word_frequency_table(d, 2),
            (std::vector<std::pair<std::string, std::size_t>>{{"甘草", 2}, {"人參", 1}}));
  EXPECT_EQ(word_frequency_table(d, 10).size(), 2u);
  EXPECT_THROW(word_frequency_table(d, 0), DataError);
}

TEST(WordFrequencyTable, TwentyRowsWhenAvailable) {
  Words words;
  for (int k = 0; k < 30; ++k) {
    for (int r = 0; r <= k % 4; ++r) words.push_back("t" + std::to_string(k));
  }
  EXPECT_EQ(word_frequency_table(doc_of("d", words), 20).size(), 20u);
}

TEST(TopKKeywords, UniqueTermOutranksSharedOnes) {
  std::vector<DocumentStats> docs{doc_of("a", {"shared", "shared", "shared", "only"}),
                                  doc_of("b", {"shared"}), doc_of("c", {"shared"})};
  const auto c = corpus_stats(docs);
  const auto top = top_k_keywords(docs[0], c, 2);
  EXPECT_EQ(top[0].first, "only");
  EXPECT_LT(top[1].second, 0.0);
  EXPECT_THROW(top_k_keywords(docs[0], c, 0), DataError);
  EXPECT_THROW(top_k_keywords(doc_of("zz", {"q"}), c, 1), DataError);
}

TEST(TopKKeywords, IdenticalDocuments) {
  const Words words{"b", "a", "b", "c", "a", "b"};
  std::vector<DocumentStats> docs{doc_of("1", words), doc_of("2", words), doc_of("3", words)};
  const auto c = corpus_stats(docs);
  const auto top = top_k_keywords(docs[1], c, 3);
  const double idf = std::log(3.0 / 4.0);
  ASSERT_EQ(top.size(), 3u);
  // Negative idf reverses the frequency order.
  EXPECT_EQ(top[0], (std::pair<std::string, double>{"c", (1.0 / 6.0) * idf}));
  EXPECT_EQ(top[1], (std::pair<std::string, double>{"a", (2.0 / 6.0) * idf}));
  EXPECT_EQ(top[2], (std::pair<std::string, double>{"b", (3.0 / 6.0) * idf}));
}

TEST(Keywords, ExhaustiveOracleProperty) {
  oracle::Rng rng(1);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t ndocs = 1 + rng() % 5;
    const int vocab = oracle::uniform_int(rng, 1, 50);
    std::vector<Words> raw(ndocs);
    std::vector<DocumentStats> docs;
    for (std::size_t d = 0; d < ndocs; ++d) {
      const int len = oracle::uniform_int(rng, 1, 60);
      for (int k = 0; k < len; ++k) {
        raw[d].push_back("w" + std::to_string(oracle::uniform_int(rng, 0, vocab - 1)));
      }
      docs.push_back(doc_of("doc" + std::to_string(d), raw[d]));
    }
    const auto corpus = corpus_stats(docs);
    const std::size_t k = 1 + rng() % 25;
    for (std::size_t d = 0; d < ndocs; ++d) {
      // Independent recount straight from the word lists.
      std::map<std::string, int> count;
      for (const auto& w : raw[d]) ++count[w];
      double tf_sum = 0.0;
      std::vector<std::tuple<double, std::string>> by_importance;
      std::vector<std::tuple<int, std::string>> by_count;
      for (const auto& [term, n] : count) {
        int df = 0;
        for (const auto& other : raw) {
          df += std::find(other.begin(), other.end(), term) != other.end();
        }
        const double tf = static_cast<double>(n) / static_cast<double>(raw[d].size());
        tf_sum += term_frequency(term, docs[d]);
        const double idf =
            std::log(static_cast<double>(ndocs) / (static_cast<double>(df) + 1.0));
        by_importance.emplace_back(-(tf * idf), term);
        by_count.emplace_back(-n, term);
      }
      EXPECT_NEAR(tf_sum, 1.0, 1e-12);
      std::sort(by_importance.begin(), by_importance.end());
      std::sort(by_count.begin(), by_count.end());
      const auto got = top_k_keywords(docs[d], corpus, k);
      const auto freq = word_frequency_table(docs[d], k);
      ASSERT_EQ(got.size(), std::min(k, count.size()));
      ASSERT_EQ(freq.size(), got.size());
      for (std::size_t r = 0; r < got.size(); ++r) {
        EXPECT_EQ(got[r].first, std::get<1>(by_importance[r]));
        EXPECT_EQ(got[r].second, -std::get<0>(by_importance[r]));
        EXPECT_EQ(freq[r].first, std::get<1>(by_count[r]));
        EXPECT_EQ(static_cast<int>(freq[r].second), -std::get<0>(by_count[r]));
      }
    }
  }
}

TEST(Keywords, TfMonotoneInCount) {
  Words words{"a", "b", "c"};
  double last = 0.0;
  for (int k = 0; k < 10; ++k) {
    words.push_back("a");
    const double tf = term_frequency("a", doc_of("d", words));
    EXPECT_GE(tf, last);
    last = tf;
  }
}

TEST(Keywords, TsvFormat) {
  const std::vector<KeywordRow> rows{{"甘草", 99, 0.138978263}, {"x", 1, -1.0 / 3.0}};
  EXPECT_EQ(to_tsv(rows),
            "term\tfrequency\timportance\n甘草\t99\t0.138978263\nx\t1\t-0.333333333\n");
  EXPECT_EQ(format_importance(0.0), "0");
}

TEST(Keywords, DeterministicTables) {
  std::vector<DocumentStats> docs{doc_of("a", {"x", "y", "y"}), doc_of("b", {"y", "z"})};
  const auto c = corpus_stats(docs);
  EXPECT_EQ(keyword_table(docs[0], c, 5, SortBy::kImportance),
            keyword_table(docs[0], c, 5, SortBy::kImportance));
}

}  // namespace
}  // namespace guwen::keywords
