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

#include "scenedesc/cli.hpp"

#include <algorithm>
#include <csignal>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>

#include <CLI11.hpp>

#include "scenedesc/dataset.hpp"
#include "scenedesc/lint.hpp"
#include "scenedesc/report.hpp"
#include "scenedesc/serve.hpp"

namespace scenedesc {
namespace {

struct Common {
  std::string manifest;
  std::string lint_config;
  bool require_images = false;
};

// Input problems map to exit 2, content problems to exit 1.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

Linter make_linter(const Common& c) {
  if (c.lint_config.empty()) return Linter();
  try {
    return Linter(LintConfig::load(c.lint_config));
  } catch (const std::exception& e) {
    throw UsageError(e.what());
  }
}

DatasetManifest load(const Common& c, const Linter& linter, bool lint_gate) {
  if (!std::filesystem::is_regular_file(c.manifest)) {
    throw UsageError("cannot read manifest: " + c.manifest);
  }
  LoadOptions opts;
  opts.require_images = c.require_images;
  opts.lint_gate = lint_gate;
  opts.linter = &linter;
  try {
    return load_manifest(c.manifest, opts);
  } catch (const ManifestError&) {
    throw;
  } catch (const std::exception& e) {
    throw UsageError(e.what());
  }
}

void print_manifest_error(const ManifestError& e, std::ostream& err) {
  for (const auto& issue : e.issues()) {
    err << "error:";
    if (issue.line) err << " line " << issue.line << ":";
    if (!issue.record_id.empty()) err << " " << issue.record_id << ":";
    err << " " << issue.message << '\n';
    for (const auto& d : issue.diagnostics) {
      err << "  " << d.rule;
      if (d.sentence) err << " sentence " << *d.sentence;
      err << ": " << d.message << '\n';
    }
  }
}

std::string text_diagnostic(const std::string& record_id, const Diagnostic& d) {
  std::string s = record_id;
  if (d.sentence) s += ":" + std::to_string(*d.sentence);
  if (d.span) s += ":" + std::to_string(d.span->begin) + "-" + std::to_string(d.span->end);
  s += ": " + std::string(severity_name(d.severity)) + " " + d.rule + ": " + d.message;
  return s;
}

ApiServer* g_server = nullptr;

void handle_signal(int) {
  if (g_server) g_server->stop();
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Traffic-scene description dataset toolkit", "scenedesc"};
  app.require_subcommand(1);

  Common common;
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--manifest", common.manifest, "Dataset manifest (JSONL)")->required();
    sub->add_option("--lint-config", common.lint_config, "Lint rule configuration (JSON)");
    sub->add_flag("--require-images", common.require_images, "Fail when referenced images are missing");
  };

  std::string candidates_path, metrics_list = "bleu,rouge,meteor,cider,spice", format = "csv", out_path;
  std::size_t workers = 1;
  auto* score = app.add_subcommand("score", "Score candidate descriptions against references");
  score->add_option("--candidates", candidates_path, "Candidates (JSONL {id?, image_id, text})")->required();
  add_common(score);
  score->add_option("--metrics", metrics_list, "Comma-separated: bleu,rouge,meteor,cider,spice")
      ->capture_default_str();
  score->add_option("--format", format, "csv | md | jsonl")->capture_default_str();
  score->add_option("--out", out_path, "Output file (stdout when omitted)");
  score->add_option("--workers", workers, "Scoring threads")->capture_default_str()->check(CLI::Range(1, 256));
  std::string preset = "default", rouge_mode, cider_variant, rounding_name, cider_rounding_name;
  std::optional<double> rouge_beta;
  score->add_option("--preset", preset, "default | stage1 (max-pr ROUGE-L with beta 1.2, CIDEr-D, truncated cider column)")
      ->capture_default_str();
  score->add_option("--rouge-mode", rouge_mode, "best | max-pr");
  score->add_option("--rouge-beta", rouge_beta, "ROUGE-L beta");
  score->add_option("--cider-variant", cider_variant, "cider | cider-d");
  score->add_option("--rounding", rounding_name, "half-up | truncate");
  score->add_option("--cider-rounding", cider_rounding_name, "half-up | truncate, cider column only");

  std::string lint_format = "text";
  auto* lint = app.add_subcommand("lint", "Check descriptions against the annotation guidelines");
  add_common(lint);
  lint->add_option("--format", lint_format, "text | jsonl")->capture_default_str();

  std::size_t min_freq = 5, top_k = 10;
  auto* stats = app.add_subcommand("stats", "Record counts and vocabulary statistics");
  add_common(stats);
  stats->add_option("--min-freq", min_freq, "Vocabulary frequency threshold")->capture_default_str();
  stats->add_option("--top", top_k, "Most frequent tokens to list")->capture_default_str();

  ServeOptions serve_opts;
  std::string static_dir;
  auto* serve = app.add_subcommand("serve", "Run the annotation HTTP API");
  add_common(serve);
  serve->add_option("--port", serve_opts.port, "TCP port (0 picks a free one)")->capture_default_str();
  serve->add_option("--host", serve_opts.host, "Bind address")->capture_default_str();
  serve->add_option("--static", static_dir, "Directory of workbench assets to serve at /");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*score) {
      auto fmt = parse_report_format(format);
      if (!fmt) throw UsageError("unknown format '" + format + "'");
      std::vector<Metric> metrics;
      try {
        metrics = parse_metrics(metrics_list);
      } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
      }
      Linter linter = make_linter(common);
      auto manifest = load(common, linter, true);
      std::vector<Candidate> candidates;
      if (!std::filesystem::is_regular_file(candidates_path)) {
        throw UsageError("cannot read candidates: " + candidates_path);
      }
      try {
        candidates = load_candidates(candidates_path);
      } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << '\n';
        return kExitFailure;
      }
      ScoreOptions options;
      RenderOptions render;
      if (preset == "stage1") {
        options = ScoreOptions::stage1();
        render.cider_rounding = Rounding::kTruncate;
      } else if (preset != "default") {
        throw UsageError("unknown preset '" + preset + "'");
      }
      if (rouge_mode == "best") {
        options.rouge.aggregation = RougeAggregation::kBestReference;
      } else if (rouge_mode == "max-pr") {
        options.rouge.aggregation = RougeAggregation::kMaxPrecisionRecall;
      } else if (!rouge_mode.empty()) {
        throw UsageError("unknown ROUGE-L mode '" + rouge_mode + "'");
      }
      if (rouge_beta) {
        if (!(*rouge_beta > 0.0)) throw UsageError("--rouge-beta must be positive");
        options.rouge.beta = *rouge_beta;
      }
      if (cider_variant == "cider") {
        options.cider.variant = CiderVariant::kCider;
      } else if (cider_variant == "cider-d") {
        options.cider.variant = CiderVariant::kCiderD;
      } else if (!cider_variant.empty()) {
        throw UsageError("unknown CIDEr variant '" + cider_variant + "'");
      }
      if (!rounding_name.empty()) {
        auto r = parse_rounding(rounding_name);
        if (!r) throw UsageError("unknown rounding '" + rounding_name + "'");
        render.rounding = *r;
      }
      if (!cider_rounding_name.empty()) {
        auto r = parse_rounding(cider_rounding_name);
        if (!r) throw UsageError("unknown rounding '" + cider_rounding_name + "'");
        render.cider_rounding = *r;
      }
      Scorer scorer(manifest, metrics, options);
      ScoreReport report;
      try {
        report = scorer.score_all(candidates, workers);
      } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << '\n';
        return kExitFailure;
      }
      for (const auto& w : report.warnings) {
        err << "warning: " << w.kind;
        if (!w.candidate_id.empty()) err << ": " << w.candidate_id;
        err << ": " << w.message << '\n';
      }
      std::string rendered = render_report(report, *fmt, render);
      if (out_path.empty()) {
        out << rendered;
      } else {
        atomic_write(out_path, rendered);
      }
      return kExitOk;
    }

    if (*lint) {
      if (lint_format != "text" && lint_format != "jsonl") {
        throw UsageError("unknown format '" + lint_format + "'");
      }
      Linter linter = make_linter(common);
      auto manifest = load(common, linter, false);
      bool all_pass = true;
      std::size_t errors = 0, warnings = 0;
      for (const auto& r : manifest.records) {
        if (r.category != Category::kSeen || !r.annotated()) continue;
        auto report = linter.lint_set(r);
        all_pass = all_pass && report.pass;
        for (const auto& d : report.diagnostics) {
          (d.severity == Severity::kError ? errors : warnings)++;
          if (lint_format == "jsonl") {
            out << diagnostic_to_json(r.id, d).dump() << '\n';
          } else {
            out << text_diagnostic(r.id, d) << '\n';
          }
        }
      }
      if (lint_format == "text") {
        out << manifest.records.size() << " records, " << errors << " errors, " << warnings
            << " warnings\n";
      }
      return all_pass ? kExitOk : kExitFailure;
    }

    if (*stats) {
      Linter linter = make_linter(common);
      auto manifest = load(common, linter, true);
      if (min_freq < 1) throw UsageError("--min-freq must be at least 1");
      out << render_stats(corpus_stats(manifest, min_freq), top_k);
      return kExitOk;
    }

    if (*serve) {
      Linter linter = make_linter(common);
      auto manifest = load(common, linter, true);
      serve_opts.static_dir = static_dir;
      RecordStore store(std::move(manifest), common.manifest, linter);
      ApiServer server(store, serve_opts);
      int port = server.bind();
      out << "listening on http://" << serve_opts.host << ":" << port << std::endl;
      g_server = &server;
      std::signal(SIGINT, handle_signal);
      std::signal(SIGTERM, handle_signal);
      server.listen();
      g_server = nullptr;
      return kExitOk;
    }
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const ManifestError& e) {
    print_manifest_error(e, err);
    return kExitFailure;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}

}  // namespace scenedesc
