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

#pragma once

#include <cstddef>
#include <iosfwd>
#include <map>
#include <set>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "scenedesc/text.hpp"

namespace scenedesc {

class CorpusError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Per-order n-gram document frequencies over reference sets, one document
// per image. Immutable after construction.
class TfIdfCorpus {
 public:
  static constexpr std::size_t kMaxOrder = 4;

  using ReferenceSet = std::pair<std::string, std::vector<TokenStream>>;

  // Throws CorpusError on an empty input or a duplicate image id.
  static TfIdfCorpus build(std::span<const ReferenceSet> reference_sets,
                           std::size_t max_order = kMaxOrder);

  std::size_t image_count() const { return image_count_; }
  std::size_t max_order() const { return df_.size(); }

  // Document frequency; 0 for n-grams absent from the corpus.
  std::size_t document_frequency(const NGram& gram) const;
  // log(|I| / max(df, 1)).
  double idf(const NGram& gram) const;

  const std::map<NGram, std::size_t>& frequencies(std::size_t order) const {
    return df_.at(order - 1);
  }

  // True when some image in the corpus has exactly this reference multiset.
  bool contains_references(std::span<const TokenStream> references) const;

  // Line-delimited JSON cache: a header line, one line per image, one line
  // per (order, n-gram). Lossless; load(save(c)) == c.
  void save(std::ostream& out) const;
  static TfIdfCorpus load(std::istream& in);

  friend bool operator==(const TfIdfCorpus&, const TfIdfCorpus&) = default;

 private:
  std::size_t image_count_ = 0;
  std::vector<std::map<NGram, std::size_t>> df_;
  // image id -> sorted, joined reference strings
  std::map<std::string, std::vector<std::string>> reference_keys_;
};

using SparseVector = std::map<NGram, double>;

// TF (count over total n-grams of that order in the stream) times IDF.
SparseVector tfidf_vector(const TokenStream& stream, const TfIdfCorpus& corpus,
                          std::size_t order);

double cosine(const SparseVector& a, const SparseVector& b);

// kCiderD clips candidate weights at the reference weight, uses raw n-gram
// counts as TF and multiplies each similarity by a Gaussian penalty on the
// length gap (measured in bigrams, as the widely used reference scorer does).
enum class CiderVariant { kCider, kCiderD };

struct CiderConfig {
  std::size_t max_order = 4;
  std::vector<double> weights;  // empty = uniform 1/max_order
  double scale = 10.0;
  CiderVariant variant = CiderVariant::kCider;
  double sigma = 6.0;  // kCiderD only

  void validate() const;
  double weight(std::size_t order) const;
};

struct CiderScore {
  double value = 0.0;
  std::vector<double> per_order;  // mean cosine per order over references
  bool degenerate = false;        // every candidate IDF weight was zero
};

// Throws CorpusError when the corpus was not built over these references.
CiderScore cider(const TokenStream& candidate,
                 std::span<const TokenStream> references,
                 const TfIdfCorpus& corpus, const CiderConfig& config = {});

}  // namespace scenedesc
