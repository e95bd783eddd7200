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


#include "scenedesc/lexicon.hpp"

#include <set>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "scenedesc/defaults.hpp"
#include "test_data.hpp"

namespace scenedesc {
namespace {

TEST(LexiconTest, ParsesSectionsHeadsAndVersion) {
  auto lex = Lexicon::parse(
      "# lexicon-version: t-1\n"
      "loose: free\n"
      "[objects]\n"
      "car: vehicle, automobile\n"
      "traffic light: traffic lights\n"
      "daytime\n");
  EXPECT_EQ(lex.version(), "t-1");
  ASSERT_EQ(lex.entries().size(), 4u);
  EXPECT_EQ(lex.entries()[0].section, "synonyms");
  EXPECT_EQ(lex.section("objects").size(), 3u);
  EXPECT_EQ(lex.canonical("vehicle"), "car");
  EXPECT_EQ(lex.canonical("traffic lights"), "traffic light");
  EXPECT_EQ(lex.canonical("unknown thing"), "unknown thing");
  EXPECT_TRUE(lex.is_head("daytime"));
  EXPECT_FALSE(lex.is_head("vehicle"));
  EXPECT_EQ(lex.max_phrase_length(), 2u);
}

TEST(LexiconTest, LongestMatchPrefersLongerPhrase) {
  auto lex = Lexicon::parse("[objects]\nlane\nego lane\n[attributes]\nego\n");
  std::vector<std::string> toks{"the", "ego", "lane", "is"};
  auto m = lex.longest_match(toks, 1);
  ASSERT_TRUE(m);
  EXPECT_EQ(m->entry->head, "ego lane");
  EXPECT_EQ(m->length, 2u);
  auto attr = lex.longest_match(toks, 1, "attributes");
  ASSERT_TRUE(attr);
  EXPECT_EQ(attr->entry->head, "ego");
  EXPECT_FALSE(lex.longest_match(toks, 0));
}

TEST(LexiconTest, HyphenatedEntriesMatchSplitTokens) {
  auto lex = Lexicon::parse("[attributes]\none-way\n");
  auto toks = tokenize("a one-way street").surfaces();
  auto m = lex.longest_match(toks, 1);
  ASSERT_TRUE(m);
  EXPECT_EQ(m->length, 3u);
  EXPECT_EQ(m->entry->head, "one-way");
}

TEST(LexiconTest, OverlappingSetsRejected) {
  try {
    Lexicon::parse("[a]\ncar: vehicle\n[b]\ntruck: vehicle\n");
    FAIL() << "expected LexiconError";
  } catch (const LexiconError& e) {
    EXPECT_EQ(e.line(), 4u);
  }
}

TEST(LexiconTest, MalformedLinesRejected) {
  EXPECT_THROW(Lexicon::parse("[objects\n"), LexiconError);
  EXPECT_THROW(Lexicon::parse(": x\n"), LexiconError);
  EXPECT_THROW(Lexicon::parse("car: , x\n"), LexiconError);
}

TEST(LexiconTest, MissingFile) {
  EXPECT_THROW(Lexicon::load("/nonexistent/lexicon.lex"), std::runtime_error);
}

TEST(LexiconTest, ShippedLexiconMatchesEmbeddedCopy) {
  auto file = Lexicon::load(testing::data_path("lexicon/traffic.lex").string());
  EXPECT_EQ(file.version(), default_lexicon().version());
  EXPECT_EQ(file.entries().size(), default_lexicon().entries().size());
  EXPECT_FALSE(file.version().empty());
}

TEST(LexiconTest, ShippedSynonymSetsAreDisjoint) {
  std::set<std::vector<std::string>> seen;
  for (const auto& e : default_lexicon().entries()) {
    for (const auto& p : e.phrases) EXPECT_TRUE(seen.insert(p).second) << e.head;
  }
  EXPECT_EQ(default_lexicon().canonical("vehicle"), "car");
  EXPECT_EQ(default_lexicon().canonical("person"), default_lexicon().canonical("individual"));
}

}  // namespace
}  // namespace scenedesc
