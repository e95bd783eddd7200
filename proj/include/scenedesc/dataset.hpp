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

// JSONL dataset manifests: loading, validation, export and vocabulary.
//
// Each line is one record:
//   {"id": ..., "image": ..., "descriptions": [...],
//    "meta": {"weather": ..., "lighting": ..., "scene_tags": [...]},
//    "category": "seen"|"unseen"|"out_of_domain", "version": n}
// An optional first line {"manifest": {"version": ..., "lexicon_version": ...}}
// carries manifest-level fields.

#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "scenedesc/lint.hpp"
#include "scenedesc/record.hpp"

namespace scenedesc {

struct ManifestIssue {
  std::size_t line = 0;  // 1-based; 0 when not tied to a line
  std::string record_id;
  std::string message;
  std::vector<Diagnostic> diagnostics;
};

class ManifestError : public std::runtime_error {
 public:
  explicit ManifestError(std::vector<ManifestIssue> issues);
  const std::vector<ManifestIssue>& issues() const { return issues_; }

 private:
  std::vector<ManifestIssue> issues_;
};

struct DatasetManifest {
  std::vector<ImageRecord> records;
  std::string version;
  std::string lexicon_version;

  const ImageRecord* find(std::string_view id) const;
  std::size_t count(Category c) const;

  friend bool operator==(const DatasetManifest&, const DatasetManifest&) = default;
};

struct LoadOptions {
  // Check that every image path exists under image_root.
  bool require_images = false;
  // Defaults to the manifest's directory.
  std::filesystem::path image_root;
  // Reject annotated seen records with error-severity lint diagnostics and
  // records with the wrong description count. Off for lint runs, which
  // report those problems as diagnostics instead.
  bool lint_gate = true;
  const Linter* linter = nullptr;  // default linter when null
};

// Throws ManifestError listing every problem found, or std::runtime_error
// when the file cannot be read.
DatasetManifest load_manifest(const std::filesystem::path& path, const LoadOptions& options = {});
DatasetManifest parse_manifest(std::istream& in, const LoadOptions& options = {});

nlohmann::ordered_json record_to_json(const ImageRecord& record);
// Throws std::invalid_argument describing the first schema violation.
ImageRecord record_from_json(const nlohmann::json& j);

// Checks the description count for the record's category. Returns an empty
// string when valid.
std::string description_count_problem(const ImageRecord& record);

void write_manifest(const DatasetManifest& manifest, std::ostream& out);
std::string serialize_manifest(const DatasetManifest& manifest);

// Writes to a sibling temp file, flushes, then renames over `path`.
void atomic_write(const std::filesystem::path& path, std::string_view content);

void export_manifest(const DatasetManifest& manifest, const std::filesystem::path& path);

struct VocabularyStats {
  static constexpr std::string_view kStart = "<start>";
  static constexpr std::string_view kEnd = "<end>";
  static constexpr std::string_view kPad = "<pad>";
  static constexpr std::string_view kUnknown = "<unk>";

  std::size_t min_frequency = 1;
  std::size_t total_tokens = 0;
  std::map<std::string, std::size_t> frequencies;
  // Special tokens first, then retained tokens by descending frequency and
  // ascending text.
  std::vector<std::string> retained;

  std::size_t size() const { return retained.size(); }
};

// Counts tokens over the descriptions of seen records only. Throws
// std::invalid_argument when min_frequency < 1.
VocabularyStats vocabulary(const DatasetManifest& manifest, std::size_t min_frequency);

}  // namespace scenedesc
