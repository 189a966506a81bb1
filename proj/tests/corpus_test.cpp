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

#include "guwen/corpus.hpp"

#include <gtest/gtest.h>

#include <random>

#include "guwen/error.hpp"
#include "oracles.hpp"

namespace guwen {
namespace {

std::vector<std::string> texts(const std::vector<Sentence>& sentences) {
  std::vector<std::string> out;
  for (const auto& s : sentences) out.push_back(s.text);
  return out;
}

TEST(Normalize, RemovesSpaces) { EXPECT_EQ(normalize("黃芪 人參"), "黃芪人參"); }

TEST(Normalize, RemovesBlankLines) {
  EXPECT_EQ(normalize("甘草\n\n\n白朮"), "甘草\n白朮");
}

TEST(Normalize, IdentityOnCleanInput) { EXPECT_EQ(normalize("脾胃論"), "脾胃論"); }

TEST(Normalize, RemovesTabsAndIdeographicSpaceOnly) {
  EXPECT_EQ(normalize("\t甘　草 ，\n \n也。\n"), "甘草，\n也。");
  EXPECT_EQ(normalize("a-b_c"), "a-b_c");
}

TEST(Normalize, InvalidEncodingNamesOffset) {
  try {
    normalize("甘\xC3");
    FAIL();
  } catch (const DecodeError& e) {
    EXPECT_EQ(e.offset(), 3u);
  }
}

TEST(Normalize, IdempotentOnRandomText) {
  std::mt19937_64 rng(7);
  const std::vector<std::string> pieces{"甘", "草", " ", "\n", "\t", "　",
                                        "。", "，", "\n\n", "x"};
  for (int trial = 0; trial < 500; ++trial) {
    std::string raw;
    const int len = static_cast<int>(rng() % 20);
    for (int k = 0; k < len; ++k) raw += pieces[rng() % pieces.size()];
    const std::string once = normalize(raw);
    EXPECT_EQ(normalize(once), once);
    EXPECT_EQ(once.find(' '), std::string::npos);
    EXPECT_EQ(once.find("\n\n"), std::string::npos);
    EXPECT_FALSE(!once.empty() && (once.front() == '\n' || once.back() == '\n'));
  }
}

TEST(SplitSentences, Delimiters) {
  EXPECT_EQ(texts(split_sentences("脾主運化。胃主受納。")),
            (std::vector<std::string>{"脾主運化。", "胃主受納。"}));
  EXPECT_TRUE(split_sentences("").empty());
  EXPECT_EQ(texts(split_sentences("陰證者何")),
            (std::vector<std::string>{"陰證者何"}));
  EXPECT_EQ(texts(split_sentences("何也？不可！可；\n甘草\n白朮。")),
            (std::vector<std::string>{"何也？", "不可！", "可；", "甘草", "白朮。"}));
}

TEST(SplitSentences, SpansTileAndBodyReassembles) {
  std::mt19937_64 rng(11);
  const std::vector<std::string> pieces{"甘", "草", "。", "；", "\n", "，",
                                        "e\xCC\x81", "！"};
  for (int trial = 0; trial < 500; ++trial) {
    std::string raw;
    const int len = static_cast<int>(rng() % 25);
    for (int k = 0; k < len; ++k) raw += pieces[rng() % pieces.size()];
    const std::string body = normalize(raw);
    Document doc{"d", "t", split_sentences(body)};
    EXPECT_EQ(doc.body(), body);
    for (const auto& s : doc.sentences) {
      ASSERT_GE(s.size(), 1u);
      std::size_t pos = 0;
      for (const auto& span : s.chars) {
        EXPECT_EQ(span.begin, pos);
        pos = span.end;
      }
      EXPECT_EQ(pos, s.text.size());
    }
  }
}

class CorpusFiles : public ::testing::Test {
 protected:
  void SetUp() override { dir_ = oracle::scratch_dir("corpus"); }
  void TearDown() override { std::filesystem::remove_all(dir_); }
  std::filesystem::path dir_;
};

TEST_F(CorpusFiles, OneDocumentPerFile) {
  oracle::spit(dir_ / "a.txt", "\xEF\xBB\xBF脾胃論\r\n夫飲食入胃。\n陽氣上行。");
  oracle::spit(dir_ / "b.txt", "題\n\n\n  \n");
  oracle::spit(dir_ / "c.txt", "陰證略例\n陰證者何");
  const std::vector<std::filesystem::path> paths{dir_ / "a.txt", dir_ / "b.txt",
                                                 dir_ / "c.txt"};
  const Corpus corpus = load_corpus(paths);
  ASSERT_EQ(corpus.size(), 3u);
  EXPECT_EQ(corpus[0].id, "a");
  EXPECT_EQ(corpus[0].title, "脾胃論");
  EXPECT_EQ(texts(corpus[0].sentences),
            (std::vector<std::string>{"夫飲食入胃。", "陽氣上行。"}));
  EXPECT_EQ(corpus[1].id, "b");
  EXPECT_TRUE(corpus[1].sentences.empty());
  EXPECT_EQ(corpus[2].sentences.size(), 1u);
  const Corpus again = load_corpus(paths);
  for (std::size_t k = 0; k < 3; ++k) {
    EXPECT_EQ(texts(again[k].sentences), texts(corpus[k].sentences));
  }
}

TEST_F(CorpusFiles, MissingPathIsNamed) {
  const std::vector<std::filesystem::path> paths{dir_ / "nope.txt"};
  try {
    load_corpus(paths);
    FAIL();
  } catch (const IoError& e) {
    EXPECT_NE(std::string(e.what()).find("nope.txt"), std::string::npos);
  }
}

TEST_F(CorpusFiles, DuplicateStemsConflict) {
  oracle::spit(dir_ / "x" / "same.txt", "t\n甲");
  oracle::spit(dir_ / "y" / "same.txt", "t\n乙");
  const std::vector<std::filesystem::path> paths{dir_ / "x" / "same.txt",
                                                 dir_ / "y" / "same.txt"};
  try {
    load_corpus(paths);
    FAIL();
  } catch (const DataError& e) {
    EXPECT_NE(std::string(e.what()).find("conflict"), std::string::npos);
  }
}

TEST_F(CorpusFiles, BadEncodingIsDataError) {
  oracle::spit(dir_ / "bad.txt", "t\n甘\xFF");
  const std::vector<std::filesystem::path> paths{dir_ / "bad.txt"};
  EXPECT_THROW(load_corpus(paths), DataError);
}

}  // namespace
}  // namespace guwen
