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
#include <optional>
#include <stdexcept>

#include "scenedesc/overlap.hpp"

namespace scenedesc {
namespace {

constexpr std::size_t kMinStem = 3;

bool ends_with(std::string_view w, std::string_view suffix) {
  return w.size() >= suffix.size() + kMinStem && w.ends_with(suffix);
}

// Key under which two tokens are considered equal at a given stage, or
// nullopt when the token cannot match at that stage.
std::optional<std::string> stage_key(const Token& t, MatchStage stage,
                                     const MeteorConfig& config) {
  switch (stage) {
    case MatchStage::kExact:
      return t.surface;
    case MatchStage::kStem:
      if (t.kind != TokenKind::kWord) return std::nullopt;
      return stem(t.surface);
    case MatchStage::kSynonym: {
      if (config.synonyms == nullptr) return std::nullopt;
      const LexiconEntry* e = config.synonyms->find_word(t.surface);
      if (e == nullptr) return std::nullopt;
      return e->section + "\x1f" + e->head;
    }
  }
  return std::nullopt;
}

}  // namespace

void MeteorConfig::validate() const {
  if (!(alpha >= 0.0 && alpha <= 1.0)) throw std::invalid_argument("METEOR alpha must be in [0,1]");
  if (!(beta > 0.0)) throw std::invalid_argument("METEOR beta must be positive");
  if (!(gamma >= 0.0 && gamma <= 1.0)) throw std::invalid_argument("METEOR gamma must be in [0,1]");
}

std::string stem(std::string_view word) {
  std::string w(word);
  if (ends_with(w, "ies")) {
    w.replace(w.size() - 3, 3, "y");
  } else if (ends_with(w, "sses") || ends_with(w, "shes") || ends_with(w, "ches") ||
             ends_with(w, "xes") || ends_with(w, "ses") || ends_with(w, "zes")) {
    w.resize(w.size() - 2);
  } else if (ends_with(w, "s") && !w.ends_with("ss")) {
    w.resize(w.size() - 1);
  } else if (ends_with(w, "ing")) {
    w.resize(w.size() - 3);
  } else if (ends_with(w, "ed")) {
    w.resize(w.size() - 2);
  } else if (ends_with(w, "ly")) {
    w.resize(w.size() - 2);
  }
  if (w.size() > kMinStem && w.back() == 'e') w.pop_back();
  return w;
}

std::size_t count_chunks(std::vector<std::pair<std::size_t, std::size_t>> pairs) {
  if (pairs.empty()) return 0;
  std::sort(pairs.begin(), pairs.end());
  std::size_t chunks = 1;
  for (std::size_t i = 1; i < pairs.size(); ++i) {
    if (pairs[i].first != pairs[i - 1].first + 1 ||
        pairs[i].second != pairs[i - 1].second + 1) {
      ++chunks;
    }
  }
  return chunks;
}

Alignment align_unigrams(const TokenStream& candidate,
                         const TokenStream& reference,
                         const MeteorConfig& config) {
  const std::size_t nc = candidate.size();
  const std::size_t nr = reference.size();
  std::vector<std::optional<std::size_t>> cand_to_ref(nc);
  std::vector<bool> ref_used(nr, false);

  for (MatchStage stage : config.stages) {
    std::vector<std::optional<std::string>> ckeys(nc), rkeys(nr);
    for (std::size_t i = 0; i < nc; ++i) ckeys[i] = stage_key(candidate[i], stage, config);
    for (std::size_t j = 0; j < nr; ++j) rkeys[j] = stage_key(reference[j], stage, config);

    auto eligible = [&](std::size_t i, std::size_t j) {
      return !ref_used[j] && ckeys[i] && rkeys[j] && *ckeys[i] == *rkeys[j];
    };

    for (std::size_t i = 0; i < nc; ++i) {
      if (cand_to_ref[i] || !ckeys[i]) continue;
      std::optional<std::size_t> pick;
      // 1. extend the chunk of the previous candidate token
      if (i > 0 && cand_to_ref[i - 1] && *cand_to_ref[i - 1] + 1 < nr &&
          eligible(i, *cand_to_ref[i - 1] + 1)) {
        pick = *cand_to_ref[i - 1] + 1;
      }
      // 2. start a run the next candidate token can continue
      if (!pick && i + 1 < nc) {
        for (std::size_t j = 0; j + 1 < nr && !pick; ++j) {
          if (eligible(i, j) && !ref_used[j + 1] && ckeys[i + 1] && rkeys[j + 1] &&
              *ckeys[i + 1] == *rkeys[j + 1]) {
            pick = j;
          }
        }
      }
      // 3. leftmost position after the last match, then leftmost overall
      if (!pick) {
        std::size_t floor = 0;
        for (std::size_t k = i; k-- > 0;) {
          if (cand_to_ref[k]) {
            floor = *cand_to_ref[k] + 1;
            break;
          }
        }
        for (std::size_t j = floor; j < nr && !pick; ++j) {
          if (eligible(i, j)) pick = j;
        }
        for (std::size_t j = 0; j < floor && !pick; ++j) {
          if (eligible(i, j)) pick = j;
        }
      }
      if (pick) {
        cand_to_ref[i] = *pick;
        ref_used[*pick] = true;
      }
    }
  }

  Alignment out;
  for (std::size_t i = 0; i < nc; ++i) {
    if (cand_to_ref[i]) out.pairs.emplace_back(i, *cand_to_ref[i]);
  }
  out.matches = out.pairs.size();
  out.chunks = count_chunks(out.pairs);
  return out;
}

MeteorScore meteor_single(const TokenStream& candidate,
                          const TokenStream& reference,
                          const MeteorConfig& config) {
  config.validate();
  const Alignment a = align_unigrams(candidate, reference, config);
  MeteorScore s;
  s.matches = a.matches;
  s.chunks = a.chunks;
  if (a.matches == 0) return s;

  const auto m = static_cast<double>(a.matches);
  s.precision = m / static_cast<double>(candidate.size());
  s.recall = m / static_cast<double>(reference.size());
  s.f_mean = s.precision * s.recall /
             (config.alpha * s.precision + (1.0 - config.alpha) * s.recall);
  // A complete single-chunk alignment of equal-length streams is a perfect
  // match and carries no fragmentation penalty.
  const bool perfect = a.chunks == 1 && a.matches == candidate.size() &&
                       a.matches == reference.size();
  s.penalty = perfect ? 0.0
                      : config.gamma * std::pow(static_cast<double>(a.chunks) / m, config.beta);
  s.score = (1.0 - s.penalty) * s.f_mean;
  return s;
}

MeteorScore meteor(const TokenStream& candidate,
                   std::span<const TokenStream> references,
                   const MeteorConfig& config) {
  if (references.empty()) throw std::invalid_argument("METEOR needs at least one reference");
  MeteorScore best;
  for (std::size_t idx = 0; idx < references.size(); ++idx) {
    MeteorScore s = meteor_single(candidate, references[idx], config);
    s.matched_reference_index = idx;
    if (idx == 0 || s.score > best.score) best = s;
  }
  return best;
}

}  // namespace scenedesc
