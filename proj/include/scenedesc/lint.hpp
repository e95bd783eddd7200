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

// Annotation guideline checks over single descriptions and description sets.

#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "scenedesc/lexicon.hpp"
#include "scenedesc/record.hpp"

namespace scenedesc {

enum class Checkability { kAutomatic, kAdvisory, kManual };
enum class Severity { kError, kWarning };
enum class RuleScope { kSentence, kSet };

std::string_view checkability_name(Checkability c);
std::string_view severity_name(Severity s);
std::optional<Severity> parse_severity(std::string_view s);
std::string_view scope_name(RuleScope s);

struct GuidelineRule {
  std::string id;  // G001..G034
  std::string summary;
  Checkability checkability = Checkability::kManual;
  Severity severity = Severity::kWarning;
  RuleScope scope = RuleScope::kSentence;
};

// All 34 guidelines in id order. Manual rules are documentation only.
const std::vector<GuidelineRule>& rule_catalog();
const GuidelineRule* find_rule(std::string_view id);

// Byte offsets into the UTF-8 sentence, [begin, end).
struct Span {
  std::size_t begin = 0;
  std::size_t end = 0;
  friend bool operator==(const Span&, const Span&) = default;
};

struct Diagnostic {
  std::string rule;
  std::optional<std::size_t> sentence;  // absent for set-scope rules
  std::optional<Span> span;
  Severity severity = Severity::kError;
  std::string message;

  friend bool operator==(const Diagnostic&, const Diagnostic&) = default;
};

struct LintReport {
  std::string record_id;
  std::vector<Diagnostic> diagnostics;
  bool pass = true;  // no error-severity diagnostics
};

struct LintConfig {
  std::size_t descriptions_per_image = kDescriptionsPerImage;
  std::size_t long_sentence_tokens = 30;
  std::size_t there_is_max = 3;
  std::size_t short_sentence_max_copulas = 2;
  bool advisory = true;
  std::map<std::string, Severity, std::less<>> severity_overrides;
  // head = preferred American term, synonyms = terms to flag
  Lexicon american_terms;

  static LintConfig defaults();
  // JSON file; relative lexicon paths resolve against the file's directory.
  static LintConfig load(const std::string& path);

  Severity severity_of(std::string_view rule) const;
};

class Linter {
 public:
  Linter() : Linter(LintConfig::defaults()) {}
  explicit Linter(LintConfig config) : config_(std::move(config)) {}

  const LintConfig& config() const { return config_; }

  std::vector<Diagnostic> lint_sentence(std::string_view text) const;

  // Set-scope rules plus every sentence-scope rule, sentences indexed from 0.
  LintReport lint_set(const ImageRecord& record) const;

 private:
  void lint_sentence_into(std::string_view text, std::optional<std::size_t> index,
                          std::vector<Diagnostic>& out) const;

  LintConfig config_;
};

std::vector<Diagnostic> lint_sentence(std::string_view text);
LintReport lint_set(const ImageRecord& record);

// One machine-readable line: {record_id, rule, sentence, span, severity, message}.
nlohmann::ordered_json diagnostic_to_json(std::string_view record_id, const Diagnostic& d);
nlohmann::ordered_json lint_report_to_json(const LintReport& report);
nlohmann::ordered_json rule_to_json(const GuidelineRule& rule);

}  // namespace scenedesc
