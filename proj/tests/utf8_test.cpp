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

#include "guwen/utf8.hpp"

#include <gtest/gtest.h>

#include "guwen/error.hpp"

namespace guwen::utf8 {
namespace {

TEST(Utf8, DecodesMixedWidths) {
  const auto cps = decode("a\xC3\xA9醫\xF0\x9F\x98\x80");
  ASSERT_EQ(cps.size(), 4u);
  EXPECT_EQ(cps[0], U'a');
  EXPECT_EQ(cps[1], U'é');
  EXPECT_EQ(cps[2], U'醫');
  EXPECT_EQ(cps[3], U'\U0001F600');
}

TEST(Utf8, EncodeRoundTrip) {
  for (char32_t cp : {U'a', U'é', U'醫', U'\U0001F600', U'　'}) {
    const auto back = decode(encode(cp));
    ASSERT_EQ(back.size(), 1u);
    EXPECT_EQ(back[0], cp);
  }
}

TEST(Utf8, ReportsOffsetOfBadByte) {
  try {
    validate("甘草\xFF");
    FAIL() << "expected DecodeError";
  } catch (const DecodeError& e) {
    EXPECT_EQ(e.offset(), 6u);
    EXPECT_NE(std::string(e.what()).find("byte offset 6"), std::string::npos);
  }
}

TEST(Utf8, RejectsTruncatedAndOverlong) {
  EXPECT_THROW(validate("\xE9\x86"), DecodeError);
  EXPECT_THROW(validate("\xC0\xAF"), DecodeError);
  EXPECT_THROW(validate("\xED\xA0\x80"), DecodeError);
  EXPECT_NO_THROW(validate(""));
}

TEST(Utf8, ClustersTileText) {
  const std::string text = "e\xCC\x81醫學";
  const auto spans = clusters(text);
  ASSERT_EQ(spans.size(), 3u);
  std::size_t pos = 0;
  for (const auto& s : spans) {
    EXPECT_EQ(s.begin, pos);
    EXPECT_GT(s.end, s.begin);
    pos = s.end;
  }
  EXPECT_EQ(pos, text.size());
  EXPECT_EQ(split_clusters(text)[0], "e\xCC\x81");
}

TEST(Utf8, SpacesAndPunctuation) {
  EXPECT_TRUE(is_space(U' '));
  EXPECT_TRUE(is_space(U'\t'));
  EXPECT_TRUE(is_space(U'　'));
  EXPECT_FALSE(is_space(U'\n'));
  EXPECT_TRUE(is_punctuation_token("，"));
  EXPECT_TRUE(is_punctuation_token("。"));
  EXPECT_TRUE(is_punctuation_token("、"));
  EXPECT_FALSE(is_punctuation_token("甘草"));
  EXPECT_FALSE(is_punctuation_token(""));
  EXPECT_EQ(length("陰證略例"), 4u);
}

}  // namespace
}  // namespace guwen::utf8
