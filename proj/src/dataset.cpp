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

#include "scenedesc/dataset.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>
#include <system_error>

#include "scenedesc/text.hpp"

namespace scenedesc {
namespace {

using json = nlohmann::json;

std::string join_issues(const std::vector<ManifestIssue>& issues) {
  std::string out;
  for (const auto& i : issues) {
    if (!out.empty()) out += "; ";
    if (i.line) out += "line " + std::to_string(i.line) + ": ";
    if (!i.record_id.empty()) out += i.record_id + ": ";
    out += i.message;
  }
  return out;
}

const json& require(const json& j, const char* key) {
  if (!j.contains(key)) throw std::invalid_argument(std::string("missing field '") + key + "'");
  return j.at(key);
}

std::string require_string(const json& j, const char* key) {
  const auto& v = require(j, key);
  if (!v.is_string()) throw std::invalid_argument(std::string("'") + key + "' must be a string");
  return v.get<std::string>();
}

std::vector<std::string> string_array(const json& v, const char* key) {
  if (!v.is_array()) throw std::invalid_argument(std::string("'") + key + "' must be an array");
  std::vector<std::string> out;
  for (const auto& e : v) {
    if (!e.is_string()) {
      throw std::invalid_argument(std::string("'") + key + "' must contain only strings");
    }
    out.push_back(e.get<std::string>());
  }
  return out;
}

std::optional<std::string> nullable_enum(const json& meta, const char* key,
                                         bool (*valid)(std::string_view)) {
  if (!meta.contains(key) || meta.at(key).is_null()) return std::nullopt;
  const auto& v = meta.at(key);
  if (!v.is_string() || !valid(v.get<std::string>())) {
    throw std::invalid_argument(std::string("meta.") + key + " has an invalid value");
  }
  return v.get<std::string>();
}

}  // namespace

std::string_view category_name(Category c) {
  switch (c) {
    case Category::kSeen: return "seen";
    case Category::kUnseen: return "unseen";
    case Category::kOutOfDomain: return "out_of_domain";
  }
  return "seen";
}

std::optional<Category> parse_category(std::string_view name) {
  if (name == "seen") return Category::kSeen;
  if (name == "unseen") return Category::kUnseen;
  if (name == "out_of_domain") return Category::kOutOfDomain;
  return std::nullopt;
}

bool is_valid_weather(std::string_view w) {
  return w == "clear" || w == "rainy" || w == "snowy" || w == "foggy";
}

bool is_valid_lighting(std::string_view l) { return l == "daytime" || l == "nighttime"; }

ManifestError::ManifestError(std::vector<ManifestIssue> issues)
    : std::runtime_error("invalid manifest: " + join_issues(issues)), issues_(std::move(issues)) {}

const ImageRecord* DatasetManifest::find(std::string_view id) const {
  for (const auto& r : records) {
    if (r.id == id) return &r;
  }
  return nullptr;
}

std::size_t DatasetManifest::count(Category c) const {
  return static_cast<std::size_t>(
      std::count_if(records.begin(), records.end(), [c](const ImageRecord& r) { return r.category == c; }));
}

nlohmann::ordered_json record_to_json(const ImageRecord& r) {
  nlohmann::ordered_json meta;
  meta["weather"] = r.meta.weather ? nlohmann::ordered_json(*r.meta.weather) : nullptr;
  meta["lighting"] = r.meta.lighting ? nlohmann::ordered_json(*r.meta.lighting) : nullptr;
  meta["scene_tags"] = r.meta.scene_tags;
  nlohmann::ordered_json j;
  j["id"] = r.id;
  j["image"] = r.image;
  j["descriptions"] = r.descriptions;
  j["meta"] = std::move(meta);
  j["category"] = std::string(category_name(r.category));
  j["version"] = r.version;
  return j;
}

ImageRecord record_from_json(const json& j) {
  if (!j.is_object()) throw std::invalid_argument("record must be a JSON object");
  static const std::set<std::string> keys{"id", "image", "descriptions", "meta", "category", "version"};
  for (const auto& [k, _] : j.items()) {
    if (!keys.count(k)) throw std::invalid_argument("unknown field '" + k + "'");
  }
  ImageRecord r;
  r.id = require_string(j, "id");
  if (r.id.empty()) throw std::invalid_argument("'id' must not be empty");
  r.image = require_string(j, "image");
  if (r.image.empty() || std::filesystem::path(r.image).is_absolute()) {
    throw std::invalid_argument("'image' must be a non-empty relative path");
  }
  r.descriptions = string_array(require(j, "descriptions"), "descriptions");

  const auto& meta = require(j, "meta");
  if (!meta.is_object()) throw std::invalid_argument("'meta' must be an object");
  static const std::set<std::string> meta_keys{"weather", "lighting", "scene_tags"};
  for (const auto& [k, _] : meta.items()) {
    if (!meta_keys.count(k)) throw std::invalid_argument("unknown field 'meta." + k + "'");
  }
  r.meta.weather = nullable_enum(meta, "weather", is_valid_weather);
  r.meta.lighting = nullable_enum(meta, "lighting", is_valid_lighting);
  if (meta.contains("scene_tags")) r.meta.scene_tags = string_array(meta.at("scene_tags"), "meta.scene_tags");

  auto cat = parse_category(require_string(j, "category"));
  if (!cat) throw std::invalid_argument("'category' must be seen, unseen or out_of_domain");
  r.category = *cat;

  const auto& version = require(j, "version");
  if (!version.is_number_unsigned()) throw std::invalid_argument("'version' must be a non-negative integer");
  r.version = version.get<std::uint64_t>();
  return r;
}

std::string description_count_problem(const ImageRecord& r) {
  const auto n = r.descriptions.size();
  if (r.category == Category::kSeen) {
    if (n != 0 && n != kDescriptionsPerImage) {
      return "G007: seen record has " + std::to_string(n) + " descriptions, expected " +
             std::to_string(kDescriptionsPerImage);
    }
  } else if (n != 0) {
    return std::string(category_name(r.category)) + " record must not carry descriptions";
  }
  return {};
}

DatasetManifest parse_manifest(std::istream& in, const LoadOptions& options) {
  static const Linter default_linter;
  const Linter& linter = options.linter ? *options.linter : default_linter;

  DatasetManifest manifest;
  std::vector<ManifestIssue> issues;
  std::set<std::string, std::less<>> ids;
  std::string line;
  std::size_t lineno = 0;
  bool first = true;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos) continue;
    json j;
    try {
      j = json::parse(line);
    } catch (const json::parse_error& e) {
      issues.push_back({lineno, {}, std::string("malformed JSON: ") + e.what(), {}});
      first = false;
      continue;
    }
    if (first && j.is_object() && j.contains("manifest")) {
      first = false;
      const auto& h = j["manifest"];
      if (j.size() != 1 || !h.is_object() || !h.contains("version") || !h.contains("lexicon_version") ||
          !h["version"].is_string() || !h["lexicon_version"].is_string() || h.size() != 2) {
        issues.push_back({lineno, {}, "malformed manifest header", {}});
        continue;
      }
      manifest.version = h["version"].get<std::string>();
      manifest.lexicon_version = h["lexicon_version"].get<std::string>();
      continue;
    }
    first = false;
    ImageRecord r;
    try {
      r = record_from_json(j);
    } catch (const std::invalid_argument& e) {
      std::string id = j.is_object() && j.contains("id") && j["id"].is_string() ? j["id"].get<std::string>() : "";
      issues.push_back({lineno, id, e.what(), {}});
      continue;
    }
    if (!ids.insert(r.id).second) {
      issues.push_back({lineno, r.id, "duplicate id", {}});
      continue;
    }
    if (auto problem = description_count_problem(r); !problem.empty() && options.lint_gate) {
      issues.push_back({lineno, r.id, problem, {}});
      continue;
    }
    if (options.require_images) {
      std::error_code ec;
      if (!std::filesystem::exists(options.image_root / r.image, ec)) {
        issues.push_back({lineno, r.id, "image not found: " + r.image, {}});
      }
    }
    if (options.lint_gate && r.category == Category::kSeen && r.annotated()) {
      auto report = linter.lint_set(r);
      if (!report.pass) {
        std::vector<Diagnostic> errors;
        std::string rules;
        for (const auto& d : report.diagnostics) {
          if (d.severity != Severity::kError) continue;
          if (rules.find(d.rule) == std::string::npos) rules += (rules.empty() ? "" : ",") + d.rule;
          errors.push_back(d);
        }
        issues.push_back({lineno, r.id, "lint errors " + rules, std::move(errors)});
      }
    }
    manifest.records.push_back(std::move(r));
  }
  if (in.bad()) throw std::runtime_error("read error while loading manifest");
  if (!issues.empty()) throw ManifestError(std::move(issues));
  return manifest;
}

DatasetManifest load_manifest(const std::filesystem::path& path, const LoadOptions& options) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open manifest: " + path.string());
  LoadOptions opts = options;
  if (opts.image_root.empty()) opts.image_root = path.parent_path();
  return parse_manifest(in, opts);
}

void write_manifest(const DatasetManifest& manifest, std::ostream& out) {
  nlohmann::ordered_json header;
  header["manifest"]["version"] = manifest.version;
  header["manifest"]["lexicon_version"] = manifest.lexicon_version;
  out << header.dump() << '\n';
  for (const auto& r : manifest.records) out << record_to_json(r).dump() << '\n';
}

std::string serialize_manifest(const DatasetManifest& manifest) {
  std::ostringstream out;
  write_manifest(manifest, out);
  return out.str();
}

void atomic_write(const std::filesystem::path& path, std::string_view content) {
  auto tmp = path;
  tmp += ".tmp";
  {
    std::FILE* f = std::fopen(tmp.c_str(), "wb");
    if (!f) throw std::runtime_error("cannot write " + tmp.string());
    bool ok = std::fwrite(content.data(), 1, content.size(), f) == content.size();
    ok = std::fflush(f) == 0 && ok;
    ok = std::fclose(f) == 0 && ok;
    if (!ok) {
      std::filesystem::remove(tmp);
      throw std::runtime_error("cannot write " + tmp.string());
    }
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp);
    throw std::runtime_error("cannot replace " + path.string() + ": " + ec.message());
  }
}

void export_manifest(const DatasetManifest& manifest, const std::filesystem::path& path) {
  atomic_write(path, serialize_manifest(manifest));
}

VocabularyStats vocabulary(const DatasetManifest& manifest, std::size_t min_frequency) {
  if (min_frequency < 1) throw std::invalid_argument("min_frequency must be at least 1");
  VocabularyStats stats;
  stats.min_frequency = min_frequency;
  for (const auto& r : manifest.records) {
    if (r.category != Category::kSeen) continue;
    for (const auto& d : r.descriptions) {
      for (const auto& t : tokenize(d)) {
        ++stats.frequencies[t.surface];
        ++stats.total_tokens;
      }
    }
  }
  stats.retained = {std::string(VocabularyStats::kStart), std::string(VocabularyStats::kEnd),
                    std::string(VocabularyStats::kPad), std::string(VocabularyStats::kUnknown)};
  std::vector<std::pair<std::string, std::size_t>> kept;
  for (const auto& [tok, n] : stats.frequencies) {
    if (n >= min_frequency) kept.emplace_back(tok, n);
  }
  std::stable_sort(kept.begin(), kept.end(),
                   [](const auto& a, const auto& b) { return a.second > b.second; });
  for (auto& [tok, _] : kept) stats.retained.push_back(std::move(tok));
  return stats;
}

}  // namespace scenedesc
