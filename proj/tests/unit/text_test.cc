// Copyright 2026 The scenedesc Authors
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


#include "scenedesc/text.hpp"

#include <random>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "test_data.hpp"

namespace scenedesc {
namespace {

using Surfaces = std::vector<std::string>;

TEST(TokenizeTest, SplitsHyphenatedCompounds) {
  EXPECT_EQ(tokenize("It is a two-way street.").surfaces(),
            (Surfaces{"it", "is", "a", "two", "-", "way", "street", "."}));
}

TEST(TokenizeTest, EmptyInput) {
  EXPECT_TRUE(tokenize("").empty());
  EXPECT_TRUE(tokenize("   \t\n").empty());
}

TEST(TokenizeTest, BracketedSignName) {
  EXPECT_EQ(tokenize("A [SCHOOL ZONE] sign is on the right side of the street ahead.").surfaces(),
            (Surfaces{"a", "[", "school", "zone", "]", "sign", "is", "on", "the", "right", "side",
                      "of", "the", "street", "ahead", "."}));
}

TEST(TokenizeTest, Kinds) {
  auto s = tokenize("2 cars [STOP], 10.");
  ASSERT_EQ(s.size(), 8u);
  EXPECT_EQ(s[0].kind, TokenKind::kNumeral);
  EXPECT_EQ(s[1].kind, TokenKind::kWord);
  EXPECT_EQ(s[2].kind, TokenKind::kBracket);
  EXPECT_EQ(s[3].kind, TokenKind::kWord);
  EXPECT_EQ(s[4].kind, TokenKind::kBracket);
  EXPECT_EQ(s[5].kind, TokenKind::kPunctuation);
  EXPECT_EQ(s[6].surface, "10");
  EXPECT_EQ(s[6].kind, TokenKind::kNumeral);
  EXPECT_EQ(s[7].kind, TokenKind::kPunctuation);
}

TEST(TokenizeTest, QuotesAndApostrophesSplit) {
  EXPECT_EQ(tokenize("it's \"x\"").surfaces(), (Surfaces{"it", "'", "s", "\"", "x", "\""}));
}

TEST(TokenizeTest, NfcAndLowercase) {
  // "É" as E + combining acute, and as the precomposed code point.
  EXPECT_EQ(tokenize("CAFE\xCC\x81").surfaces(), tokenize("caf\xC3\xA9").surfaces());
  EXPECT_EQ(tokenize("\xC3\x89T\xC3\x89").surfaces(), (Surfaces{"\xC3\xA9t\xC3\xA9"}));
}

TEST(TokenizeTest, PrintedCandidatesAreFixedPoints) {
  for (const auto& r : testing::reference_manifest().records) {
    for (const auto& d : r.descriptions) {
      auto once = tokenize(d);
      EXPECT_EQ(tokenize(once.joined()), once) << d;
    }
  }
}

TEST(TokenizeTest, RandomInputsKeepInvariants) {
  const std::vector<std::string> pieces{"A", "b", "Car", "-", ",", ".", "[", "]", "'", "\"", " ",
                                        "  ", "12", "x7", "\xC3\x89", "(", "?", "\xE2\x80\x9C"};
  std::mt19937 rng(7);
  for (int iter = 0; iter < 2000; ++iter) {
    std::string text;
    int n = rng() % 20;
    for (int i = 0; i < n; ++i) text += pieces[rng() % pieces.size()];
    auto s = tokenize(text);
    for (const auto& t : s) {
      ASSERT_FALSE(t.surface.empty());
      ASSERT_EQ(t.surface.find_first_of(" \t\n"), std::string::npos);
      ASSERT_EQ(t.kind == TokenKind::kBracket, t.surface == "[" || t.surface == "]");
      for (char c : t.surface) ASSERT_FALSE(c >= 'A' && c <= 'Z') << text;
    }
    ASSERT_EQ(tokenize(s.joined()), s) << text;
  }
}

TEST(NgramsTest, Unigrams) {
  auto c = ngrams(tokenize("it is clear daytime ."), 1);
  EXPECT_EQ(c.size(), 5u);
  for (const auto& [g, n] : c) EXPECT_EQ(n, 1u);
}

TEST(NgramsTest, FourGrams) {
  auto c = ngrams(tokenize("it is clear daytime ."), 4);
  NGramCounts want{{{"it", "is", "clear", "daytime"}, 1}, {{"is", "clear", "daytime", "."}, 1}};
  EXPECT_EQ(c, want);
}

TEST(NgramsTest, RepeatedWindow) {
  NGramCounts want{{{"a", "a"}, 2}};
  EXPECT_EQ(ngrams(testing::ts({"a", "a", "a"}), 2), want);
}

TEST(NgramsTest, OrderZeroRejected) {
  EXPECT_THROW(ngrams(tokenize("a"), 0), std::invalid_argument);
}

TEST(NgramsTest, MultiplicitySumsToWindowCount) {
  std::mt19937 rng(11);
  for (int iter = 0; iter < 500; ++iter) {
    std::vector<std::string> s;
    int len = rng() % 9;
    for (int i = 0; i < len; ++i) s.push_back(std::string(1, static_cast<char>('a' + rng() % 3)));
    for (std::size_t n = 1; n <= 4; ++n) {
      std::size_t total = 0;
      for (const auto& [g, k] : ngrams(testing::ts(s), n)) total += k;
      EXPECT_EQ(total, s.size() >= n ? s.size() - n + 1 : 0);
    }
  }
}

}  // namespace
}  // namespace scenedesc
