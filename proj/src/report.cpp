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

#include "scenedesc/report.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <fstream>
#include <mutex>
#include <set>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "scenedesc/defaults.hpp"
#include "scenedesc/overlap.hpp"

namespace scenedesc {
namespace {

using json = nlohmann::json;

std::vector<std::string> metric_columns(Metric m) {
  switch (m) {
    case Metric::kBleu: return {"bleu_1", "bleu_2", "bleu_3", "bleu_4"};
    case Metric::kRouge: return {"rouge_l"};
    case Metric::kMeteor: return {"meteor"};
    case Metric::kCider: return {"cider"};
    case Metric::kSpice: return {"spice"};
  }
  return {};
}

std::vector<double> metric_values(const ScoreRow& row, Metric m) {
  switch (m) {
    case Metric::kBleu: return {row.bleu->begin(), row.bleu->end()};
    case Metric::kRouge: return {*row.rouge_l};
    case Metric::kMeteor: return {*row.meteor};
    case Metric::kCider: return {*row.cider};
    case Metric::kSpice: return {*row.spice};
  }
  return {};
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string md_cell(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '|') out += '\\';
    out += c;
  }
  return out;
}

std::string join(const std::vector<std::string>& items, std::string_view sep) {
  std::string out;
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (i) out += sep;
    out += items[i];
  }
  return out;
}

}  // namespace

std::string_view metric_name(Metric m) {
  switch (m) {
    case Metric::kBleu: return "bleu";
    case Metric::kRouge: return "rouge";
    case Metric::kMeteor: return "meteor";
    case Metric::kCider: return "cider";
    case Metric::kSpice: return "spice";
  }
  return "bleu";
}

const std::vector<Metric>& all_metrics() {
  static const std::vector<Metric> all{Metric::kBleu, Metric::kRouge, Metric::kMeteor,
                                       Metric::kCider, Metric::kSpice};
  return all;
}

std::vector<Metric> parse_metrics(std::string_view list) {
  std::set<Metric> chosen;
  std::size_t pos = 0;
  while (pos <= list.size()) {
    auto comma = list.find(',', pos);
    auto name = list.substr(pos, comma == std::string_view::npos ? list.npos : comma - pos);
    while (!name.empty() && name.front() == ' ') name.remove_prefix(1);
    while (!name.empty() && name.back() == ' ') name.remove_suffix(1);
    auto it = std::find_if(all_metrics().begin(), all_metrics().end(),
                           [&](Metric m) { return metric_name(m) == name; });
    if (it == all_metrics().end()) {
      throw std::invalid_argument("unknown metric '" + std::string(name) + "'");
    }
    if (!chosen.insert(*it).second) {
      throw std::invalid_argument("metric listed twice: " + std::string(name));
    }
    if (comma == std::string_view::npos) break;
    pos = comma + 1;
  }
  return {chosen.begin(), chosen.end()};
}

std::vector<Candidate> parse_candidates(std::istream& in) {
  std::vector<Candidate> out;
  std::string line;
  std::size_t lineno = 0;
  std::set<std::string> ids;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos) continue;
    auto fail = [&](const std::string& why) {
      throw std::invalid_argument("candidates line " + std::to_string(lineno) + ": " + why);
    };
    json j;
    try {
      j = json::parse(line);
    } catch (const json::parse_error& e) {
      fail(std::string("malformed JSON: ") + e.what());
    }
    if (!j.is_object()) fail("expected an object");
    for (const auto& [k, _] : j.items()) {
      if (k != "id" && k != "image_id" && k != "text") fail("unknown field '" + k + "'");
    }
    if (!j.contains("image_id") || !j["image_id"].is_string()) fail("'image_id' must be a string");
    if (!j.contains("text") || !j["text"].is_string()) fail("'text' must be a string");
    Candidate c;
    if (j.contains("id")) {
      if (!j["id"].is_string()) fail("'id' must be a string");
      c.id = j["id"].get<std::string>();
    } else {
      c.id = "line-" + std::to_string(lineno);
    }
    if (!ids.insert(c.id).second) fail("duplicate candidate id '" + c.id + "'");
    c.image_id = j["image_id"].get<std::string>();
    c.text = j["text"].get<std::string>();
    out.push_back(std::move(c));
  }
  if (in.bad()) throw std::runtime_error("read error while loading candidates");
  return out;
}

std::vector<Candidate> load_candidates(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open candidates: " + path.string());
  return parse_candidates(in);
}

ScoreOptions ScoreOptions::stage1() {
  ScoreOptions o;
  o.rouge.beta = 1.2;
  o.rouge.aggregation = RougeAggregation::kMaxPrecisionRecall;
  o.cider.variant = CiderVariant::kCiderD;
  return o;
}

Scorer::Scorer(const DatasetManifest& manifest, std::vector<Metric> metrics, ScoreOptions options)
    : metrics_(std::move(metrics)), options_(std::move(options)) {
  if (!options_.lexicon) options_.lexicon = &default_lexicon();
  if (!options_.grammar) options_.grammar = &default_grammar();
  options_.cider.validate();
  if (!(options_.rouge.beta > 0.0)) throw std::invalid_argument("ROUGE-L beta must be positive");
  std::sort(metrics_.begin(), metrics_.end());
  metrics_.erase(std::unique(metrics_.begin(), metrics_.end()), metrics_.end());
  std::vector<TfIdfCorpus::ReferenceSet> sets;
  for (const auto& r : manifest.records) {
    if (r.category != Category::kSeen || !r.annotated()) continue;
    std::vector<TokenStream> refs;
    for (const auto& d : r.descriptions) refs.push_back(tokenize(d));
    sets.emplace_back(r.id, refs);
    references_.emplace(r.id, std::move(refs));
  }
  if (has(Metric::kCider) && !sets.empty()) corpus_ = TfIdfCorpus::build(sets);
}

bool Scorer::has(Metric m) const {
  return std::find(metrics_.begin(), metrics_.end(), m) != metrics_.end();
}

ScoreRow Scorer::score(const Candidate& candidate) const {
  auto it = references_.find(candidate.image_id);
  if (it == references_.end()) {
    throw std::invalid_argument("unknown image id '" + candidate.image_id + "' for candidate '" +
                                candidate.id + "'");
  }
  const auto& refs = it->second;
  const TokenStream cand = tokenize(candidate.text);

  ScoreRow row;
  row.candidate_id = candidate.id;
  row.image_id = candidate.image_id;
  for (std::size_t i = 0; i < refs.size(); ++i) {
    if (refs[i] == cand) {
      row.echo_reference = i;
      row.warnings.emplace_back("reference-echo");
      break;
    }
  }
  if (cand.empty()) row.warnings.emplace_back("empty-candidate");

  if (has(Metric::kBleu)) {
    auto b = bleu(cand, refs);
    row.bleu = std::array<double, 4>{b.bleu_k(1), b.bleu_k(2), b.bleu_k(3), b.bleu_k(4)};
  }
  if (has(Metric::kRouge)) row.rouge_l = rouge_l(cand, refs, options_.rouge).f_measure;
  if (has(Metric::kMeteor)) {
    MeteorConfig cfg;
    cfg.synonyms = options_.lexicon;
    row.meteor = meteor(cand, refs, cfg).score;
  }
  if (has(Metric::kCider)) {
    auto c = cider(cand, refs, *corpus_, options_.cider);
    row.cider = c.value;
    if (c.degenerate) row.warnings.emplace_back("cider-degenerate");
  }
  if (has(Metric::kSpice)) row.spice = spice(cand, refs, *options_.lexicon, *options_.grammar).f1;
  return row;
}

ScoreReport Scorer::score_all(std::span<const Candidate> candidates, std::size_t workers) const {
  ScoreReport report;
  report.metrics = metrics_;
  report.rows.resize(candidates.size());
  std::vector<std::exception_ptr> errors(candidates.size());

  workers = std::max<std::size_t>(1, std::min(workers, candidates.size()));
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i = next++; i < candidates.size(); i = next++) {
      try {
        report.rows[i] = score(candidates[i]);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  if (workers == 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(work);
    for (auto& t : pool) t.join();
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }

  if (has(Metric::kCider) && corpus_ && corpus_->image_count() < 2 && !candidates.empty()) {
    report.warnings.push_back({"cider-single-image", "",
                               "CIDEr corpus has a single image; every IDF weight is zero"});
  }
  for (const auto& row : report.rows) {
    if (row.echo_reference) report.echoes.push_back({row.candidate_id, *row.echo_reference});
    for (const auto& w : row.warnings) {
      std::string msg;
      if (w == "reference-echo") {
        msg = "candidate repeats reference " + std::to_string(*row.echo_reference);
      } else if (w == "cider-degenerate") {
        msg = "every CIDEr weight of the candidate is zero";
      } else {
        msg = "candidate has no tokens";
      }
      report.warnings.push_back({w, row.candidate_id, std::move(msg)});
    }
  }
  return report;
}

std::optional<ReportFormat> parse_report_format(std::string_view name) {
  if (name == "csv") return ReportFormat::kCsv;
  if (name == "md") return ReportFormat::kMarkdown;
  if (name == "jsonl") return ReportFormat::kJsonl;
  return std::nullopt;
}

std::optional<Rounding> parse_rounding(std::string_view name) {
  if (name == "half-up") return Rounding::kHalfUp;
  if (name == "truncate") return Rounding::kTruncate;
  return std::nullopt;
}

std::string format_score(double value, Rounding rounding) {
  // The epsilon absorbs binary representation error at digit boundaries.
  const double offset = rounding == Rounding::kHalfUp ? 0.5 + 1e-9 : 1e-6;
  double scaled = std::floor(value * 10000.0 + offset) / 10000.0;
  if (scaled == 0.0) scaled = 0.0;  // no "-0.0000"
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.4f", scaled);
  return buf;
}

std::string render_report(const ScoreReport& report, ReportFormat format, const RenderOptions& options) {
  std::vector<std::string> columns;
  for (auto m : report.metrics) {
    auto c = metric_columns(m);
    columns.insert(columns.end(), c.begin(), c.end());
  }
  std::ostringstream out;
  if (format == ReportFormat::kJsonl) {
    for (const auto& row : report.rows) {
      nlohmann::ordered_json j;
      j["candidate_id"] = row.candidate_id;
      j["image_id"] = row.image_id;
      nlohmann::ordered_json scores = nlohmann::ordered_json::object();
      for (auto m : report.metrics) {
        auto names = metric_columns(m);
        auto values = metric_values(row, m);
        for (std::size_t i = 0; i < names.size(); ++i) scores[names[i]] = values[i];
      }
      j["scores"] = std::move(scores);
      j["echo_reference"] = row.echo_reference ? nlohmann::ordered_json(*row.echo_reference) : nullptr;
      j["warnings"] = row.warnings;
      out << j.dump() << '\n';
    }
    return out.str();
  }

  std::vector<std::string> header{"candidate_id", "image_id"};
  header.insert(header.end(), columns.begin(), columns.end());
  header.emplace_back("echo");
  header.emplace_back("warnings");
  auto cells = [&](const ScoreRow& row) {
    std::vector<std::string> c{row.candidate_id, row.image_id};
    for (auto m : report.metrics) {
      const Rounding rounding = m == Metric::kCider && options.cider_rounding ? *options.cider_rounding
                                                                              : options.rounding;
      for (double v : metric_values(row, m)) c.push_back(format_score(v, rounding));
    }
    c.push_back(row.echo_reference ? std::to_string(*row.echo_reference) : "");
    c.push_back(join(row.warnings, ";"));
    return c;
  };

  if (format == ReportFormat::kCsv) {
    out << join(header, ",") << '\n';
    for (const auto& row : report.rows) {
      auto c = cells(row);
      for (auto& s : c) s = csv_field(s);
      out << join(c, ",") << '\n';
    }
  } else {
    out << "| " << join(header, " | ") << " |\n|";
    for (std::size_t i = 0; i < header.size(); ++i) out << (i < 2 || i + 2 >= header.size() ? "---|" : "---:|");
    out << '\n';
    for (const auto& row : report.rows) {
      auto c = cells(row);
      for (auto& s : c) s = md_cell(s);
      out << "| " << join(c, " | ") << " |\n";
    }
  }
  return out.str();
}

CorpusStats corpus_stats(const DatasetManifest& manifest, std::size_t min_frequency) {
  CorpusStats stats;
  for (auto c : {Category::kSeen, Category::kUnseen, Category::kOutOfDomain}) {
    stats.records_by_category[std::string(category_name(c))] = manifest.count(c);
  }
  for (const auto& r : manifest.records) {
    if (r.category == Category::kSeen && r.annotated()) ++stats.annotated_records;
    stats.descriptions += r.descriptions.size();
  }
  stats.vocabulary = vocabulary(manifest, min_frequency);
  return stats;
}

std::string render_stats(const CorpusStats& stats, std::size_t top_k) {
  std::ostringstream out;
  std::size_t total = 0;
  for (const auto& [_, n] : stats.records_by_category) total += n;
  out << "records: " << total << '\n';
  for (const auto& name : {"seen", "unseen", "out_of_domain"}) {
    out << "  " << name << ": " << stats.records_by_category.at(name) << '\n';
  }
  const auto& v = stats.vocabulary;
  out << "annotated seen records: " << stats.annotated_records << '\n';
  out << "descriptions: " << stats.descriptions << '\n';
  out << "tokens: " << v.total_tokens << '\n';
  out << "distinct tokens: " << v.frequencies.size() << '\n';
  out << "min frequency: " << v.min_frequency << '\n';
  out << "vocabulary size: " << v.size() << " (" << v.size() - 4 << " retained + 4 special)\n";
  out << "top tokens:\n";
  std::size_t shown = 0;
  for (std::size_t i = 4; i < v.retained.size() && shown < top_k; ++i, ++shown) {
    out << "  " << v.retained[i] << '\t' << v.frequencies.at(v.retained[i]) << '\n';
  }
  return out.str();
}

}  // namespace scenedesc
