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
#include <cstdint>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <gtest/gtest.h>
#include <json.hpp>

#include "scenedesc/dataset.hpp"
#include "test_data.hpp"

namespace scenedesc {
namespace {

using testing::data_path;
using testing::reference_manifest;

std::string record_line(const ImageRecord& r) { return record_to_json(r).dump() + "\n"; }

DatasetManifest parse(const std::string& text, LoadOptions opts = {}) {
  std::istringstream in(text);
  return parse_manifest(in, opts);
}

std::vector<ManifestIssue> issues_of(const std::string& text, LoadOptions opts = {}) {
  try {
    parse(text, opts);
  } catch (const ManifestError& e) {
    return e.issues();
  }
  return {};
}

TEST(LoadManifestTest, PrintedFixture) {
  const auto& m = reference_manifest();
  ASSERT_EQ(m.records.size(), 5u);
  EXPECT_EQ(m.count(Category::kSeen), 5u);
  EXPECT_FALSE(m.version.empty());
  EXPECT_FALSE(m.lexicon_version.empty());
  for (const auto& r : m.records) {
    EXPECT_EQ(r.descriptions.size(), 10u);
    EXPECT_TRUE(r.meta.weather);
    EXPECT_TRUE(r.meta.lighting);
  }
  EXPECT_EQ(m.find("seen_bdd_003")->meta.weather, "snowy");
  EXPECT_EQ(m.find("nope"), nullptr);
}

TEST(LoadManifestTest, Categories) {
  auto m = load_manifest(data_path("fixtures/categories.jsonl"));
  EXPECT_EQ(m.count(Category::kSeen), 5u);
  EXPECT_EQ(m.count(Category::kUnseen), 5u);
  EXPECT_EQ(m.count(Category::kOutOfDomain), 5u);
}

TEST(LoadManifestTest, ElevenDescriptionsNamesG007) {
  ImageRecord r = reference_manifest().records[0];
  r.descriptions.push_back("It is clear daytime.");
  auto issues = issues_of(record_line(r));
  ASSERT_EQ(issues.size(), 1u);
  EXPECT_EQ(issues[0].line, 1u);
  EXPECT_NE(issues[0].message.find("G007"), std::string::npos);
}

TEST(LoadManifestTest, DuplicateId) {
  const auto line = record_line(reference_manifest().records[0]);
  auto issues = issues_of(line + line);
  ASSERT_EQ(issues.size(), 1u);
  EXPECT_EQ(issues[0].line, 2u);
  EXPECT_NE(issues[0].message.find("duplicate"), std::string::npos);
}

TEST(LoadManifestTest, MalformedLinesReportLineNumbers) {
  const auto good = record_line(reference_manifest().records[0]);
  auto issues = issues_of(good + "{oops\n" + R"({"id":"x","image":"a.jpg","descriptions":[],"meta":{},"category":"seen","version":0,"extra":1})" "\n");
  ASSERT_EQ(issues.size(), 2u);
  EXPECT_EQ(issues[0].line, 2u);
  EXPECT_EQ(issues[1].line, 3u);
  EXPECT_NE(issues[1].message.find("extra"), std::string::npos);
}

TEST(LoadManifestTest, SchemaViolations) {
  auto bad = [&](const std::string& line) { return !issues_of(line + "\n").empty(); };
  EXPECT_TRUE(bad(R"({"id":"x","image":"/abs.jpg","descriptions":[],"meta":{},"category":"seen","version":0})"));
  EXPECT_TRUE(bad(R"({"id":"x","image":"a.jpg","descriptions":[],"meta":{"weather":"hail"},"category":"seen","version":0})"));
  EXPECT_TRUE(bad(R"({"id":"x","image":"a.jpg","descriptions":[],"meta":{},"category":"other","version":0})"));
  EXPECT_TRUE(bad(R"({"id":"x","image":"a.jpg","descriptions":[],"meta":{},"category":"seen","version":-1})"));
  EXPECT_TRUE(bad(R"({"id":"x","image":"a.jpg","descriptions":["a."],"meta":{},"category":"unseen","version":0})"));
  EXPECT_TRUE(bad(R"({"id":"","image":"a.jpg","descriptions":[],"meta":{},"category":"seen","version":0})"));
  EXPECT_FALSE(bad(R"({"id":"x","image":"a.jpg","descriptions":[],"meta":{"weather":null},"category":"seen","version":0})"));
}

TEST(LoadManifestTest, LintGate) {
  auto path = data_path("fixtures/contraction.jsonl");
  try {
    load_manifest(path);
    FAIL() << "expected ManifestError";
  } catch (const ManifestError& e) {
    ASSERT_EQ(e.issues().size(), 1u);
    EXPECT_EQ(e.issues()[0].record_id, "seen_bdd_001");
    ASSERT_FALSE(e.issues()[0].diagnostics.empty());
    EXPECT_EQ(e.issues()[0].diagnostics[0].rule, "G014");
  }
  LoadOptions off;
  off.lint_gate = false;
  EXPECT_EQ(load_manifest(path, off).records.size(), 5u);
}

TEST(LoadManifestTest, RequireImages) {
  testing::TempDir dir;
  auto manifest = dir.path() / "m.jsonl";
  std::ofstream(manifest) << record_line(reference_manifest().records[0]);
  LoadOptions opts;
  opts.require_images = true;
  EXPECT_THROW(load_manifest(manifest, opts), ManifestError);
  std::filesystem::create_directories(dir.path() / "images");
  std::ofstream(dir.path() / "images" / "seen_bdd_001.jpg") << "x";
  EXPECT_EQ(load_manifest(manifest, opts).records.size(), 1u);
}

TEST(LoadManifestTest, UnreadableFile) {
  EXPECT_THROW(load_manifest("/nonexistent/m.jsonl"), std::runtime_error);
}

TEST(LoadManifestTest, EmptyManifest) {
  auto m = parse("");
  EXPECT_TRUE(m.records.empty());
}

TEST(ExportTest, RoundTripIsIdentityAndByteStable) {
  testing::TempDir dir;
  for (const char* name : {"fixtures/references.jsonl", "fixtures/categories.jsonl", "fixtures/workbench.jsonl"}) {
    auto m = load_manifest(data_path(name));
    auto out = dir.path() / "out.jsonl";
    export_manifest(m, out);
    auto back = load_manifest(out);
    EXPECT_EQ(back, m) << name;
    EXPECT_EQ(serialize_manifest(back), testing::read_file(out)) << name;
    EXPECT_FALSE(std::filesystem::exists(out.string() + ".tmp"));
  }
}

TEST(ExportTest, PreservesDescriptionOrder) {
  ImageRecord r = reference_manifest().records[1];
  std::reverse(r.descriptions.begin(), r.descriptions.end());
  DatasetManifest m;
  m.records.push_back(r);
  auto back = parse(serialize_manifest(m));
  EXPECT_EQ(back.records[0].descriptions, r.descriptions);
}

TEST(ExportTest, HeaderCarriesVersions) {
  DatasetManifest m;
  m.version = "v9";
  m.lexicon_version = "lex-3";
  auto text = serialize_manifest(m);
  EXPECT_EQ(text, "{\"manifest\":{\"version\":\"v9\",\"lexicon_version\":\"lex-3\"}}\n");
  EXPECT_EQ(parse(text), m);
}

TEST(ExportTest, UnwritableDestination) {
  EXPECT_THROW(export_manifest(reference_manifest(), "/nonexistent/dir/out.jsonl"), std::runtime_error);
}

std::vector<std::string> golden_vocabulary() {
  std::istringstream in(testing::read_file(data_path("golden/vocab_min5.txt")));
  std::vector<std::string> out;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    out.push_back(line.substr(0, line.find('\t')));
  }
  return out;
}

TEST(VocabularyTest, MatchesIndependentRecount) {
  auto v = vocabulary(reference_manifest(), 5);
  EXPECT_EQ(v.retained, golden_vocabulary());
  EXPECT_EQ(v.total_tokens, 930u);
  EXPECT_EQ(v.frequencies.size(), 89u);
}

TEST(VocabularyTest, ThresholdOneKeepsEverything) {
  auto v = vocabulary(reference_manifest(), 1);
  EXPECT_EQ(v.size(), v.frequencies.size() + 4);
}

TEST(VocabularyTest, RepeatedSentence) {
  ImageRecord r;
  r.id = "x";
  r.image = "x.jpg";
  r.descriptions.assign(10, "It is clear daytime.");
  DatasetManifest m;
  m.records.push_back(r);
  auto v = vocabulary(m, 5);
  EXPECT_EQ(v.size(), 4u + 5u);
}

TEST(VocabularyTest, MonotoneInThreshold) {
  std::size_t prev = SIZE_MAX;
  for (std::size_t k = 1; k <= 40; ++k) {
    auto n = vocabulary(reference_manifest(), k).size();
    EXPECT_LE(n, prev);
    prev = n;
  }
}

TEST(VocabularyTest, OnlySeenRecordsCount) {
  auto m = load_manifest(data_path("fixtures/categories.jsonl"));
  EXPECT_EQ(vocabulary(m, 1).total_tokens, 930u);
  EXPECT_THROW(vocabulary(m, 0), std::invalid_argument);
}

}  // namespace
}  // namespace scenedesc
