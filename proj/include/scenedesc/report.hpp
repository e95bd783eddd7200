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

// Candidate scoring against a manifest, report rendering and corpus stats.

#pragma once

#include <array>
#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "scenedesc/cider.hpp"
#include "scenedesc/dataset.hpp"
#include "scenedesc/lexicon.hpp"
#include "scenedesc/overlap.hpp"
#include "scenedesc/scene_graph.hpp"

namespace scenedesc {

enum class Metric { kBleu, kRouge, kMeteor, kCider, kSpice };

std::string_view metric_name(Metric m);
// Comma-separated list, e.g. "bleu,rouge". Throws std::invalid_argument on an
// unknown or repeated name. Result is in canonical column order.
std::vector<Metric> parse_metrics(std::string_view list);
const std::vector<Metric>& all_metrics();

struct Candidate {
  std::string id;
  std::string image_id;
  std::string text;
};

// JSONL `{id?, image_id, text}`; a missing id becomes "line-<n>".
// Throws std::invalid_argument with the line number on bad input.
std::vector<Candidate> parse_candidates(std::istream& in);
std::vector<Candidate> load_candidates(const std::filesystem::path& path);

struct EchoFlag {
  std::string candidate_id;
  std::size_t reference_index = 0;
};

struct ScoreRow {
  std::string candidate_id;
  std::string image_id;
  std::optional<std::array<double, 4>> bleu;
  std::optional<double> rouge_l;
  std::optional<double> meteor;
  std::optional<double> cider;
  std::optional<double> spice;
  std::optional<std::size_t> echo_reference;
  std::vector<std::string> warnings;  // reference-echo, cider-degenerate, empty-candidate
};

struct ScoreWarning {
  std::string kind;
  std::string candidate_id;  // empty for report-level warnings
  std::string message;
};

struct ScoreReport {
  std::vector<Metric> metrics;
  std::vector<ScoreRow> rows;
  std::vector<EchoFlag> echoes;
  std::vector<ScoreWarning> warnings;
};

struct ScoreOptions {
  RougeConfig rouge;
  CiderConfig cider;
  const Lexicon* lexicon = nullptr;  // default lexicon when null
  const Grammar* grammar = nullptr;  // default grammar when null

  // ROUGE-L with max precision/recall aggregation and beta 1.2, and CIDEr-D.
  // These are the settings under which the stage-1 evaluation table of the
  // fixture corpus is reproduced.
  static ScoreOptions stage1();
};

// Immutable scoring context: tokenized references per seen image and the
// manifest-wide CIDEr corpus, built once.
class Scorer {
 public:
  Scorer(const DatasetManifest& manifest, std::vector<Metric> metrics,
         ScoreOptions options = {});

  const std::vector<Metric>& metrics() const { return metrics_; }
  bool has(Metric m) const;

  // Throws std::invalid_argument for an image id that is not an annotated
  // seen record.
  ScoreRow score(const Candidate& candidate) const;

  // Rows keep candidate order for any worker count.
  ScoreReport score_all(std::span<const Candidate> candidates, std::size_t workers = 1) const;

 private:
  std::vector<Metric> metrics_;
  ScoreOptions options_;
  std::map<std::string, std::vector<TokenStream>, std::less<>> references_;
  std::optional<TfIdfCorpus> corpus_;
};

enum class ReportFormat { kCsv, kMarkdown, kJsonl };

std::optional<ReportFormat> parse_report_format(std::string_view name);

enum class Rounding { kHalfUp, kTruncate };

std::optional<Rounding> parse_rounding(std::string_view name);

// Four decimals.
std::string format_score(double value, Rounding rounding = Rounding::kHalfUp);

struct RenderOptions {
  Rounding rounding = Rounding::kHalfUp;
  // Overrides `rounding` for the cider column.
  std::optional<Rounding> cider_rounding;
};

// csv and md use 4 decimals; jsonl keeps full precision.
std::string render_report(const ScoreReport& report, ReportFormat format,
                          const RenderOptions& options = {});

struct CorpusStats {
  std::map<std::string, std::size_t> records_by_category;
  std::size_t annotated_records = 0;
  std::size_t descriptions = 0;
  VocabularyStats vocabulary;
};

CorpusStats corpus_stats(const DatasetManifest& manifest, std::size_t min_frequency);
std::string render_stats(const CorpusStats& stats, std::size_t top_k = 10);

}  // namespace scenedesc
