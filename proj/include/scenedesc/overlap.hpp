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

// Sentence-level n-gram and alignment metrics against a reference set.

#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "scenedesc/lexicon.hpp"
#include "scenedesc/text.hpp"

namespace scenedesc {

struct BleuConfig {
  std::size_t max_order = 4;
  // Empty means uniform 1/max_order.
  std::vector<double> weights;
  double precision_floor = 1e-16;

  // Throws std::invalid_argument on inconsistent settings.
  void validate() const;
  double weight(std::size_t order) const;  // 1-based
};

struct BleuScore {
  std::vector<double> precisions;  // p_1..p_N after flooring
  double brevity_penalty = 1.0;
  std::size_t candidate_length = 0;
  std::size_t reference_length = 0;
  std::vector<double> bleu;  // bleu[k-1] is the cumulative score over orders 1..k
  bool empty_candidate = false;

  double bleu_k(std::size_t k) const { return bleu.at(k - 1); }
};

// Clipped n-gram precision with joint clipping over all references and the
// closest-length (ties to shorter) brevity penalty. Cumulative scores use the
// configured weights of orders 1..k, renormalized to sum to one.
BleuScore bleu(const TokenStream& candidate,
               std::span<const TokenStream> references,
               const BleuConfig& config = {});

// kBestReference scores each reference and keeps the best F. kMaxPrecisionRecall
// takes the best precision and the best recall separately, possibly from
// different references, then combines them.
enum class RougeAggregation { kBestReference, kMaxPrecisionRecall };

struct RougeConfig {
  double beta = 1.0;
  RougeAggregation aggregation = RougeAggregation::kBestReference;
};

struct RougeScore {
  double recall = 0.0;
  double precision = 0.0;
  double f_measure = 0.0;
  std::size_t lcs_length = 0;
  std::size_t matched_reference_index = 0;
  bool degenerate = false;  // candidate and best reference both empty
};

std::size_t lcs_length(std::span<const Token> a, std::span<const Token> b);

// Best-F reference wins; ties keep the lowest index. Under
// kMaxPrecisionRecall the index and lcs_length refer to the best-recall
// reference.
RougeScore rouge_l(const TokenStream& candidate,
                   std::span<const TokenStream> references,
                   const RougeConfig& config = {});

enum class MatchStage { kExact, kStem, kSynonym };

struct MeteorConfig {
  double alpha = 0.9;
  double beta = 3.0;
  double gamma = 0.5;
  std::vector<MatchStage> stages = {MatchStage::kExact, MatchStage::kStem,
                                    MatchStage::kSynonym};
  // Synonym stage source; the stage is skipped when null.
  const Lexicon* synonyms = nullptr;

  void validate() const;
};

struct Alignment {
  // pairs[i] = (candidate index, reference index), sorted by candidate index.
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  std::size_t matches = 0;
  std::size_t chunks = 0;
};

struct MeteorScore {
  double precision = 0.0;
  double recall = 0.0;
  double f_mean = 0.0;
  std::size_t matches = 0;
  std::size_t chunks = 0;
  double penalty = 0.0;
  double score = 0.0;
  std::size_t matched_reference_index = 0;
};

// Suffix-stripping stem used by the stem matching stage.
std::string stem(std::string_view word);

// Minimum number of chunks for a fixed set of matched pairs.
std::size_t count_chunks(std::vector<std::pair<std::size_t, std::size_t>> pairs);

Alignment align_unigrams(const TokenStream& candidate,
                         const TokenStream& reference,
                         const MeteorConfig& config = {});

MeteorScore meteor_single(const TokenStream& candidate,
                          const TokenStream& reference,
                          const MeteorConfig& config = {});

// Best single-reference score; ties keep the lowest index.
MeteorScore meteor(const TokenStream& candidate,
                   std::span<const TokenStream> references,
                   const MeteorConfig& config = {});

}  // namespace scenedesc
