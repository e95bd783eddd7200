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

// Exponential-time recursion, independent of the DP table.
std::size_t lcs_oracle(const std::vector<std::string>& a, std::size_t i,
                       const std::vector<std::string>& b, std::size_t j) {
  if (i == a.size() || j == b.size()) return 0;
  if (a[i] == b[j]) return 1 + lcs_oracle(a, i + 1, b, j + 1);
  return std::max(lcs_oracle(a, i + 1, b, j), lcs_oracle(a, i, b, j + 1));
}

TEST(RougeTest, EchoIsOne) {
  auto refs = references("seen_bdd_001");
  auto s = rouge_l(tokenize("it is a residential area ."), refs);
  EXPECT_DOUBLE_EQ(s.f_measure, 1.0);
  EXPECT_EQ(s.matched_reference_index, 3u);
}

TEST(RougeTest, HandComputedCase) {
  std::vector<TokenStream> refs{ts({"a", "x", "c"})};
  auto s = rouge_l(ts({"a", "b", "c", "d"}), refs);
  EXPECT_EQ(s.lcs_length, 2u);
  EXPECT_DOUBLE_EQ(s.recall, 2.0 / 3.0);
  EXPECT_DOUBLE_EQ(s.precision, 0.5);
  EXPECT_NEAR(s.f_measure, 4.0 / 7.0, 1e-15);
}

TEST(RougeTest, BetaWeighting) {
  std::vector<TokenStream> refs{ts({"a", "x", "c"})};
  RougeConfig cfg;
  cfg.beta = 2.0;
  auto s = rouge_l(ts({"a", "b", "c", "d"}), refs, cfg);
  const double r = 2.0 / 3.0, p = 0.5;
  EXPECT_NEAR(s.f_measure, (1 + 4) * r * p / (r + 4 * p), 1e-15);
}

TEST(RougeTest, EmptyCandidate) {
  std::vector<TokenStream> refs{ts({"a"})};
  auto s = rouge_l(TokenStream{}, refs);
  EXPECT_EQ(s.f_measure, 0.0);
  EXPECT_FALSE(s.degenerate);
  std::vector<TokenStream> empty_ref{TokenStream{}};
  auto d = rouge_l(TokenStream{}, empty_ref);
  EXPECT_EQ(d.f_measure, 0.0);
  EXPECT_TRUE(d.degenerate);
}

TEST(RougeTest, EmptyReferencesRejected) {
  std::vector<TokenStream> none;
  EXPECT_THROW(rouge_l(ts({"a"}), none), std::invalid_argument);
}

TEST(RougeTest, BestReferenceLowestIndexOnTie) {
  std::vector<TokenStream> refs{ts({"a", "q"}), ts({"a", "z"}), ts({"a", "b"})};
  auto s = rouge_l(ts({"a", "b"}), refs);
  EXPECT_EQ(s.matched_reference_index, 2u);
  auto tie = rouge_l(ts({"a", "c"}), refs);
  EXPECT_EQ(tie.matched_reference_index, 0u);
}

TEST(RougeTest, MaxPrecisionRecallCombinesReferences) {
  // Reference 0 gives the best recall, reference 1 the best precision.
  std::vector<TokenStream> refs{ts({"a", "b"}), ts({"a", "b", "c", "x", "y", "z", "w"})};
  RougeConfig cfg;
  cfg.aggregation = RougeAggregation::kMaxPrecisionRecall;
  auto s = rouge_l(ts({"a", "b", "c", "d"}), refs, cfg);
  EXPECT_DOUBLE_EQ(s.recall, 1.0);
  EXPECT_DOUBLE_EQ(s.precision, 0.75);
  EXPECT_NEAR(s.f_measure, 2 * 0.75 / 1.75, 1e-15);
  EXPECT_EQ(s.matched_reference_index, 0u);
  auto best = rouge_l(ts({"a", "b", "c", "d"}), refs);
  EXPECT_LT(best.f_measure, s.f_measure);
}

TEST(RougeTest, FZeroIffNoCommonToken) {
  std::vector<TokenStream> refs{ts({"x", "y"})};
  auto s = rouge_l(ts({"a", "b"}), refs);
  EXPECT_EQ(s.lcs_length, 0u);
  EXPECT_EQ(s.f_measure, 0.0);
}

TEST(RougeTest, LcsMatchesRecursiveOracleOnSmallAlphabet) {
  std::mt19937 rng(5);
  for (int iter = 0; iter < 2000; ++iter) {
    std::vector<std::string> a(rng() % 9), b(rng() % 9);
    for (auto& w : a) w = std::string(1, static_cast<char>('a' + rng() % 3));
    for (auto& w : b) w = std::string(1, static_cast<char>('a' + rng() % 3));
    auto sa = ts(a), sb = ts(b);
    ASSERT_EQ(lcs_length(sa.tokens(), sb.tokens()), lcs_oracle(a, 0, b, 0));
  }
}

TEST(RougeTest, ReferenceOrderInvariant) {
  auto refs = references("seen_bdd_003");
  auto cand = tokenize("a bus is braking in the right lane .");
  auto fwd = rouge_l(cand, refs);
  std::reverse(refs.begin(), refs.end());
  EXPECT_DOUBLE_EQ(rouge_l(cand, refs).f_measure, fwd.f_measure);
}

}  // namespace
}  // namespace scenedesc
