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
#include <stdexcept>
#include <vector>

#include "scenedesc/overlap.hpp"

namespace scenedesc {

// Two-row dynamic program, O(|a|*|b|) time and O(|b|) space.
std::size_t lcs_length(std::span<const Token> a, std::span<const Token> b) {
  std::vector<std::size_t> prev(b.size() + 1, 0), cur(b.size() + 1, 0);
  for (std::size_t i = 1; i <= a.size(); ++i) {
    for (std::size_t j = 1; j <= b.size(); ++j) {
      if (a[i - 1].surface == b[j - 1].surface) {
        cur[j] = prev[j - 1] + 1;
      } else {
        cur[j] = std::max(prev[j], cur[j - 1]);
      }
    }
    std::swap(prev, cur);
  }
  return prev[b.size()];
}

RougeScore rouge_l(const TokenStream& candidate,
                   std::span<const TokenStream> references,
                   const RougeConfig& config) {
  if (references.empty()) throw std::invalid_argument("ROUGE-L needs at least one reference");
  if (!(config.beta > 0.0)) throw std::invalid_argument("ROUGE-L beta must be positive");

  const double beta2 = config.beta * config.beta;
  RougeScore best;
  bool have_best = false;
  std::vector<double> precisions, recalls;
  for (std::size_t idx = 0; idx < references.size(); ++idx) {
    const TokenStream& ref = references[idx];
    RougeScore s;
    s.matched_reference_index = idx;
    s.lcs_length = lcs_length(candidate.tokens(), ref.tokens());
    if (candidate.empty() && ref.empty()) s.degenerate = true;
    if (s.lcs_length > 0) {
      const auto lcs = static_cast<double>(s.lcs_length);
      s.recall = lcs / static_cast<double>(ref.size());
      s.precision = lcs / static_cast<double>(candidate.size());
      s.f_measure = (1.0 + beta2) * s.recall * s.precision /
                    (s.recall + beta2 * s.precision);
    }
    if (!have_best || s.f_measure > best.f_measure) {
      best = s;
      have_best = true;
    }
    precisions.push_back(s.precision);
    recalls.push_back(s.recall);
  }
  if (config.aggregation == RougeAggregation::kMaxPrecisionRecall) {
    auto r_it = std::max_element(recalls.begin(), recalls.end());
    const auto idx = static_cast<std::size_t>(r_it - recalls.begin());
    RougeScore s;
    s.matched_reference_index = idx;
    s.lcs_length = lcs_length(candidate.tokens(), references[idx].tokens());
    s.degenerate = candidate.empty() && references[idx].empty();
    s.recall = *r_it;
    s.precision = *std::max_element(precisions.begin(), precisions.end());
    if (s.recall > 0.0 && s.precision > 0.0) {
      s.f_measure = (1.0 + beta2) * s.recall * s.precision / (s.recall + beta2 * s.precision);
    }
    return s;
  }
  return best;
}

}  // namespace scenedesc
