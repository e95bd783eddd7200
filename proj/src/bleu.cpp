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
#include <cstdlib>
#include <numeric>
#include <stdexcept>

#include "scenedesc/overlap.hpp"

namespace scenedesc {

void BleuConfig::validate() const {
  if (max_order == 0) throw std::invalid_argument("BLEU max_order must be >= 1");
  if (!(precision_floor > 0.0)) {
    throw std::invalid_argument("BLEU precision floor must be positive");
  }
  if (weights.empty()) return;
  if (weights.size() != max_order) {
    throw std::invalid_argument("BLEU needs one weight per order");
  }
  double sum = 0.0;
  for (double w : weights) {
    if (!(w > 0.0)) throw std::invalid_argument("BLEU weights must be positive");
    sum += w;
  }
  if (std::abs(sum - 1.0) > 1e-9) {
    throw std::invalid_argument("BLEU weights must sum to 1");
  }
}

double BleuConfig::weight(std::size_t order) const {
  if (weights.empty()) return 1.0 / static_cast<double>(max_order);
  return weights.at(order - 1);
}

BleuScore bleu(const TokenStream& candidate,
               std::span<const TokenStream> references,
               const BleuConfig& config) {
  config.validate();
  if (references.empty()) throw std::invalid_argument("BLEU needs at least one reference");

  const std::size_t n_max = config.max_order;
  BleuScore out;
  out.candidate_length = candidate.size();

  // Closest reference length, ties broken toward the shorter one.
  const auto c = static_cast<long>(candidate.size());
  long best = -1;
  for (const auto& ref : references) {
    const auto r = static_cast<long>(ref.size());
    if (best < 0 || std::labs(r - c) < std::labs(best - c) ||
        (std::labs(r - c) == std::labs(best - c) && r < best)) {
      best = r;
    }
  }
  out.reference_length = static_cast<std::size_t>(best);

  for (std::size_t n = 1; n <= n_max; ++n) {
    const NGramCounts cand = ngrams(candidate, n);
    NGramCounts max_ref;
    for (const auto& ref : references) {
      for (const auto& [gram, count] : ngrams(ref, n)) {
        auto& slot = max_ref[gram];
        slot = std::max(slot, count);
      }
    }
    std::size_t total = 0;
    std::size_t clipped = 0;
    for (const auto& [gram, count] : cand) {
      total += count;
      if (auto it = max_ref.find(gram); it != max_ref.end()) {
        clipped += std::min(count, it->second);
      }
    }
    double p = total == 0 ? 0.0 : static_cast<double>(clipped) / static_cast<double>(total);
    out.precisions.push_back(std::max(p, config.precision_floor));
  }

  if (candidate.empty()) {
    out.empty_candidate = true;
    out.brevity_penalty = 0.0;
    out.bleu.assign(n_max, config.precision_floor);
    return out;
  }

  out.brevity_penalty =
      out.candidate_length > out.reference_length
          ? 1.0
          : std::exp(1.0 - static_cast<double>(out.reference_length) /
                               static_cast<double>(out.candidate_length));

  for (std::size_t k = 1; k <= n_max; ++k) {
    double weight_sum = 0.0;
    for (std::size_t n = 1; n <= k; ++n) weight_sum += config.weight(n);
    double log_sum = 0.0;
    for (std::size_t n = 1; n <= k; ++n) {
      log_sum += config.weight(n) / weight_sum * std::log(out.precisions[n - 1]);
    }
    out.bleu.push_back(out.brevity_penalty * std::exp(log_sum));
  }
  return out;
}

}  // namespace scenedesc
