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

#include "scenedesc/cider.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <ostream>

#include <json.hpp>

namespace scenedesc {
namespace {

constexpr const char* kCacheFormat = "scenedesc-cider-corpus";
constexpr int kCacheVersion = 1;

std::vector<std::string> reference_key(std::span<const TokenStream> refs) {
  std::vector<std::string> key;
  key.reserve(refs.size());
  for (const auto& r : refs) key.push_back(r.joined());
  std::sort(key.begin(), key.end());
  return key;
}

}  // namespace

TfIdfCorpus TfIdfCorpus::build(std::span<const ReferenceSet> reference_sets,
                               std::size_t max_order) {
  if (reference_sets.empty()) throw CorpusError("CIDEr corpus needs at least one image");
  if (max_order == 0) throw CorpusError("CIDEr corpus max order must be >= 1");
  TfIdfCorpus corpus;
  corpus.image_count_ = reference_sets.size();
  corpus.df_.resize(max_order);
  for (const auto& [id, refs] : reference_sets) {
    if (!corpus.reference_keys_.emplace(id, reference_key(refs)).second) {
      throw CorpusError("duplicate image id in CIDEr corpus: " + id);
    }
    for (std::size_t n = 1; n <= max_order; ++n) {
      // An n-gram counts once per image however many references contain it.
      std::set<NGram> present;
      for (const auto& ref : refs) {
        for (auto& [gram, count] : ngrams(ref, n)) present.insert(gram);
      }
      for (const auto& gram : present) ++corpus.df_[n - 1][gram];
    }
  }
  return corpus;
}

std::size_t TfIdfCorpus::document_frequency(const NGram& gram) const {
  if (gram.empty() || gram.size() > df_.size()) return 0;
  const auto& table = df_[gram.size() - 1];
  auto it = table.find(gram);
  return it == table.end() ? 0 : it->second;
}

double TfIdfCorpus::idf(const NGram& gram) const {
  const std::size_t df = std::max<std::size_t>(document_frequency(gram), 1);
  return std::log(static_cast<double>(image_count_) / static_cast<double>(df));
}

bool TfIdfCorpus::contains_references(std::span<const TokenStream> references) const {
  const auto key = reference_key(references);
  return std::any_of(reference_keys_.begin(), reference_keys_.end(),
                     [&](const auto& kv) { return kv.second == key; });
}

void TfIdfCorpus::save(std::ostream& out) const {
  nlohmann::ordered_json header;
  header["format"] = kCacheFormat;
  header["version"] = kCacheVersion;
  header["images"] = image_count_;
  header["max_order"] = df_.size();
  out << header.dump() << '\n';
  for (const auto& [id, key] : reference_keys_) {
    nlohmann::ordered_json line;
    line["image"] = id;
    line["references"] = key;
    out << line.dump() << '\n';
  }
  for (std::size_t n = 1; n <= df_.size(); ++n) {
    for (const auto& [gram, df] : df_[n - 1]) {
      nlohmann::ordered_json line;
      line["order"] = n;
      line["ngram"] = gram;
      line["df"] = df;
      out << line.dump() << '\n';
    }
  }
}

TfIdfCorpus TfIdfCorpus::load(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw CorpusError("empty corpus cache");
  TfIdfCorpus corpus;
  try {
    const auto header = nlohmann::json::parse(line);
    if (header.value("format", "") != kCacheFormat ||
        header.value("version", 0) != kCacheVersion) {
      throw CorpusError("unsupported corpus cache header");
    }
    corpus.image_count_ = header.at("images").get<std::size_t>();
    corpus.df_.resize(header.at("max_order").get<std::size_t>());
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
      ++line_no;
      if (line.empty()) continue;
      const auto j = nlohmann::json::parse(line);
      if (j.contains("image")) {
        corpus.reference_keys_[j.at("image").get<std::string>()] =
            j.at("references").get<std::vector<std::string>>();
      } else {
        const auto order = j.at("order").get<std::size_t>();
        if (order == 0 || order > corpus.df_.size()) {
          throw CorpusError("corpus cache line " + std::to_string(line_no) + ": bad order");
        }
        corpus.df_[order - 1][j.at("ngram").get<NGram>()] = j.at("df").get<std::size_t>();
      }
    }
  } catch (const nlohmann::json::exception& e) {
    throw CorpusError(std::string("malformed corpus cache: ") + e.what());
  }
  if (corpus.reference_keys_.size() != corpus.image_count_) {
    throw CorpusError("corpus cache image count mismatch");
  }
  return corpus;
}

SparseVector tfidf_vector(const TokenStream& stream, const TfIdfCorpus& corpus,
                          std::size_t order) {
  SparseVector vec;
  const NGramCounts counts = ngrams(stream, order);
  std::size_t total = 0;
  for (const auto& [gram, count] : counts) total += count;
  if (total == 0) return vec;
  for (const auto& [gram, count] : counts) {
    const double tf = static_cast<double>(count) / static_cast<double>(total);
    vec.emplace(gram, tf * corpus.idf(gram));
  }
  return vec;
}

double cosine(const SparseVector& a, const SparseVector& b) {
  double dot = 0.0, na = 0.0, nb = 0.0;
  for (const auto& [g, w] : a) {
    na += w * w;
    if (auto it = b.find(g); it != b.end()) dot += w * it->second;
  }
  for (const auto& [g, w] : b) nb += w * w;
  if (na == 0.0 || nb == 0.0) return 0.0;
  return std::clamp(dot / (std::sqrt(na) * std::sqrt(nb)), 0.0, 1.0);
}

namespace {

SparseVector count_vector(const TokenStream& stream, const TfIdfCorpus& corpus,
                          std::size_t order) {
  SparseVector vec;
  for (const auto& [gram, count] : ngrams(stream, order)) {
    vec.emplace(gram, static_cast<double>(count) * corpus.idf(gram));
  }
  return vec;
}

double clipped_cosine(const SparseVector& hyp, const SparseVector& ref) {
  double dot = 0.0, nh = 0.0, nr = 0.0;
  for (const auto& [g, w] : hyp) {
    nh += w * w;
    if (auto it = ref.find(g); it != ref.end()) dot += std::min(w, it->second) * it->second;
  }
  for (const auto& [g, w] : ref) nr += w * w;
  if (nh == 0.0 || nr == 0.0) return 0.0;
  return std::clamp(dot / (std::sqrt(nh) * std::sqrt(nr)), 0.0, 1.0);
}

double bigram_count(const TokenStream& s) {
  return s.size() < 2 ? 0.0 : static_cast<double>(s.size() - 1);
}

}  // namespace

void CiderConfig::validate() const {
  if (max_order == 0) throw std::invalid_argument("CIDEr max_order must be >= 1");
  if (!(scale > 0.0)) throw std::invalid_argument("CIDEr scale must be positive");
  if (variant == CiderVariant::kCiderD && !(sigma > 0.0)) {
    throw std::invalid_argument("CIDEr-D sigma must be positive");
  }
  if (!weights.empty() && weights.size() != max_order) {
    throw std::invalid_argument("CIDEr needs one weight per order");
  }
}

double CiderConfig::weight(std::size_t order) const {
  if (weights.empty()) return 1.0 / static_cast<double>(max_order);
  return weights.at(order - 1);
}

CiderScore cider(const TokenStream& candidate,
                 std::span<const TokenStream> references,
                 const TfIdfCorpus& corpus, const CiderConfig& config) {
  config.validate();
  if (references.empty()) throw std::invalid_argument("CIDEr needs at least one reference");
  if (config.max_order > corpus.max_order()) {
    throw CorpusError("corpus was built for fewer n-gram orders than requested");
  }
  if (!corpus.contains_references(references)) {
    throw CorpusError("CIDEr corpus was not built over this reference set");
  }

  CiderScore out;
  bool any_weight = false;
  const auto m = static_cast<double>(references.size());
  const bool cider_d = config.variant == CiderVariant::kCiderD;
  for (std::size_t n = 1; n <= config.max_order; ++n) {
    const SparseVector cand =
        cider_d ? count_vector(candidate, corpus, n) : tfidf_vector(candidate, corpus, n);
    for (const auto& [g, w] : cand) any_weight = any_weight || w > 0.0;
    double sum = 0.0;
    for (const auto& ref : references) {
      if (cider_d) {
        const double delta = bigram_count(candidate) - bigram_count(ref);
        sum += clipped_cosine(cand, count_vector(ref, corpus, n)) *
               std::exp(-(delta * delta) / (2.0 * config.sigma * config.sigma));
      } else {
        sum += cosine(cand, tfidf_vector(ref, corpus, n));
      }
    }
    out.per_order.push_back(sum / m);
    out.value += config.weight(n) * sum / m;
  }
  out.value *= config.scale;
  out.degenerate = !candidate.empty() && !any_weight;
  return out;
}

}  // namespace scenedesc
