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


#include <algorithm>
#include <cmath>
#include <map>
#include <random>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "scenedesc/overlap.hpp"
#include "test_data.hpp"

namespace scenedesc {
namespace {

using testing::references;
using testing::ts;
using Words = std::vector<std::string>;

// Straightforward recomputation over plain string vectors.
std::vector<double> oracle_bleu(const Words& c, const std::vector<Words>& refs) {
  auto grams = [](const Words& s, std::size_t n) {
    std::map<Words, int> m;
    for (std::size_t i = 0; i + n <= s.size(); ++i) ++m[Words(s.begin() + i, s.begin() + i + n)];
    return m;
  };
  std::size_t r = refs[0].size();
  for (const auto& ref : refs) {
    auto d = [&](std::size_t len) { return std::abs(static_cast<double>(len) - c.size()); };
    if (d(ref.size()) < d(r) || (d(ref.size()) == d(r) && ref.size() < r)) r = ref.size();
  }
  double bp = c.size() > r ? 1.0 : std::exp(1.0 - static_cast<double>(r) / c.size());
  std::vector<double> out;
  double log_sum = 0;
  for (std::size_t n = 1; n <= 4; ++n) {
    auto cg = grams(c, n);
    int total = 0, matched = 0;
    for (const auto& [g, k] : cg) {
      int best = 0;
      for (const auto& ref : refs) best = std::max(best, grams(ref, n)[g]);
      total += k;
      matched += std::min(k, best);
    }
    double p = matched ? static_cast<double>(matched) / total : 1e-16;
    log_sum += std::log(p);
    out.push_back(bp * std::exp(log_sum / n));
  }
  return out;
}

TEST(BleuTest, EchoOfReferenceIsOne) {
  auto refs = references("seen_bdd_001");
  auto s = bleu(tokenize("it is clear daytime ."), refs);
  for (std::size_t k = 1; k <= 4; ++k) EXPECT_NEAR(s.bleu_k(k), 1.0, 1e-12);
  EXPECT_DOUBLE_EQ(s.brevity_penalty, 1.0);
}

TEST(BleuTest, PartialOverlapRow) {
  auto s = bleu(tokenize("the ego lane is the rightmost lane ."), references("seen_bdd_001"));
  EXPECT_NEAR(s.bleu_k(1), 7.0 / 8.0, 1e-12);
  EXPECT_EQ(s.candidate_length, 8u);
  EXPECT_LT(s.bleu_k(4), 0.001);
  EXPECT_GT(s.bleu_k(4), 0.0);
  // No 4-gram overlap: only p_4 is floored.
  EXPECT_DOUBLE_EQ(s.precisions[3], 1e-16);
}

TEST(BleuTest, SelfMatch) {
  auto c = ts({"a", "b", "c", "d", "e"});
  std::vector<TokenStream> refs{c};
  auto s = bleu(c, refs);
  EXPECT_DOUBLE_EQ(s.brevity_penalty, 1.0);
  for (double p : s.precisions) EXPECT_DOUBLE_EQ(p, 1.0);
  EXPECT_DOUBLE_EQ(s.bleu_k(4), 1.0);
}

TEST(BleuTest, BrevityPenaltyShortCandidate) {
  std::vector<TokenStream> refs{ts({"a", "b", "c", "d", "e"})};
  auto s = bleu(ts({"a", "b"}), refs);
  EXPECT_NEAR(s.brevity_penalty, std::exp(1.0 - 5.0 / 2.0), 1e-15);
  EXPECT_DOUBLE_EQ(s.precisions[0], 1.0);
  EXPECT_NEAR(s.bleu_k(1), 0.2231301601484298, 1e-15);
}

TEST(BleuTest, ClosestLengthTiesPickShorter) {
  // Candidate of 4 tokens, references of 3 and 5: the tie goes to 3.
  std::vector<TokenStream> refs{ts({"a", "b", "c", "d", "e"}), ts({"a", "b", "c"})};
  auto s = bleu(ts({"a", "b", "c", "d"}), refs);
  EXPECT_EQ(s.reference_length, 3u);
  EXPECT_DOUBLE_EQ(s.brevity_penalty, 1.0);
}

TEST(BleuTest, JointClipping) {
  // "a" appears twice in the second reference, so two of three count.
  std::vector<TokenStream> refs{ts({"a", "b", "c"}), ts({"a", "a", "x"})};
  auto s = bleu(ts({"a", "a", "a"}), refs);
  EXPECT_NEAR(s.precisions[0], 2.0 / 3.0, 1e-15);
}

TEST(BleuTest, EmptyCandidate) {
  std::vector<TokenStream> refs{ts({"a"})};
  auto s = bleu(TokenStream{}, refs);
  EXPECT_TRUE(s.empty_candidate);
  for (double b : s.bleu) {
    EXPECT_GT(b, 0.0);
    EXPECT_LT(b, 1e-15);
  }
}

TEST(BleuTest, EmptyReferencesRejected) {
  std::vector<TokenStream> none;
  EXPECT_THROW(bleu(ts({"a"}), none), std::invalid_argument);
}

TEST(BleuTest, ConfigValidation) {
  BleuConfig bad_sum;
  bad_sum.weights = {0.5, 0.2, 0.2, 0.2};
  EXPECT_THROW(bad_sum.validate(), std::invalid_argument);
  BleuConfig bad_floor;
  bad_floor.precision_floor = 0;
  EXPECT_THROW(bad_floor.validate(), std::invalid_argument);
  BleuConfig bad_len;
  bad_len.weights = {1.0};
  EXPECT_THROW(bad_len.validate(), std::invalid_argument);
}

TEST(BleuTest, CumulativeScoresCanRiseWithOrder) {
  // Clipped bigram precision 3/5 exceeds unigram precision 3/6 here.
  std::vector<TokenStream> refs{ts({"b", "b", "a", "b", "c"}), ts({"a"}),
                                ts({"b", "c", "c", "c", "b", "c", "a"})};
  auto s = bleu(ts({"a", "b", "b", "a", "a", "a"}), refs);
  EXPECT_DOUBLE_EQ(s.bleu_k(1), 0.5);
  EXPECT_NEAR(s.bleu_k(2), std::sqrt(0.5 * 0.6), 1e-15);
  EXPECT_GT(s.bleu_k(2), s.bleu_k(1));
}

TEST(BleuTest, MatchesOracleOnRandomInputs) {
  std::mt19937 rng(2024);
  auto word = [&] { return std::string(1, static_cast<char>('a' + rng() % 4)); };
  for (int iter = 0; iter < 3000; ++iter) {
    Words c(1 + rng() % 8);
    for (auto& w : c) w = word();
    std::vector<Words> refs(1 + rng() % 3);
    std::vector<TokenStream> ref_streams;
    for (auto& r : refs) {
      r.resize(1 + rng() % 8);
      for (auto& w : r) w = word();
      ref_streams.push_back(ts(r));
    }
    auto got = bleu(ts(c), ref_streams);
    auto want = oracle_bleu(c, refs);
    for (std::size_t k = 0; k < 4; ++k) {
      ASSERT_NEAR(got.bleu[k], want[k], 1e-12 * std::max(1.0, want[k]));
      ASSERT_LE(got.bleu[k], 1.0 + 1e-12);
    }
    // Reordering references changes nothing.
    std::reverse(ref_streams.begin(), ref_streams.end());
    ASSERT_EQ(bleu(ts(c), ref_streams).bleu, got.bleu);
  }
}

}  // namespace
}  // namespace scenedesc
