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
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <gtest/gtest.h>
#include <json.hpp>

#include "scenedesc/cli.hpp"
#include "test_data.hpp"

namespace scenedesc {
namespace {

using testing::data_path;
using testing::TempDir;

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

std::string fixture(const std::string& name) { return data_path("fixtures/" + name).string(); }

TEST(CliTest, ScoreCsv) {
  auto r = run({"score", "--manifest", fixture("references.jsonl"), "--candidates",
                fixture("stage1_candidates.jsonl"), "--metrics", "bleu,rouge"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  EXPECT_EQ(std::count(r.out.begin(), r.out.end(), '\n'), 41);
  EXPECT_NE(r.out.find("reference-echo"), std::string::npos);
}

TEST(CliTest, ScorePresetMatchesExplicitFlags) {
  const std::vector<std::string> base{"score", "--manifest", fixture("references.jsonl"),
                                      "--candidates", fixture("stage1_candidates.jsonl"),
                                      "--metrics", "bleu,rouge,cider"};
  auto preset = base;
  preset.insert(preset.end(), {"--preset", "stage1"});
  auto flags = base;
  flags.insert(flags.end(), {"--rouge-mode", "max-pr", "--rouge-beta", "1.2", "--cider-variant",
                             "cider-d", "--cider-rounding", "truncate"});
  auto a = run(preset), b = run(flags), c = run(base);
  ASSERT_EQ(a.code, kExitOk) << a.err;
  EXPECT_EQ(a.out, b.out);
  EXPECT_NE(a.out, c.out);
}

TEST(CliTest, ScoreToFile) {
  TempDir dir;
  auto path = (dir.path() / "out.jsonl").string();
  auto r = run({"score", "--manifest", fixture("references.jsonl"), "--candidates",
                fixture("stage1_candidates.jsonl"), "--format", "jsonl", "--out", path,
                "--workers", "8"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  EXPECT_TRUE(r.out.empty());
  auto written = testing::read_file(path);
  EXPECT_EQ(std::count(written.begin(), written.end(), '\n'), 40);
}

TEST(CliTest, ScoreEmptyCandidates) {
  TempDir dir;
  auto path = dir.path() / "empty.jsonl";
  std::ofstream(path).close();
  auto r = run({"score", "--manifest", fixture("references.jsonl"), "--candidates", path.string()});
  EXPECT_EQ(r.code, kExitOk) << r.err;
  EXPECT_EQ(r.out, "candidate_id,image_id,bleu_1,bleu_2,bleu_3,bleu_4,rouge_l,meteor,cider,spice,echo,warnings\n");
}

TEST(CliTest, ScoreSingleImageWarns) {
  TempDir dir;
  auto path = dir.path() / "c.jsonl";
  std::ofstream(path) << R"({"id":"x","image_id":"seen_bdd_001","text":"a car is ahead ."})" << '\n';
  auto r = run({"score", "--manifest", fixture("single_image.jsonl"), "--candidates",
                path.string(), "--metrics", "cider"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  EXPECT_NE(r.err.find("cider-single-image"), std::string::npos);
  EXPECT_NE(r.out.find("x,seen_bdd_001,0.0000,,cider-degenerate"), std::string::npos) << r.out;
}

TEST(CliTest, ScoreBadCandidatesFails) {
  TempDir dir;
  auto path = dir.path() / "bad.jsonl";
  std::ofstream(path) << R"({"id":"x","image_id":"nope","text":"a"})" << '\n';
  auto r = run({"score", "--manifest", fixture("references.jsonl"), "--candidates", path.string()});
  EXPECT_EQ(r.code, kExitFailure);
  EXPECT_NE(r.err.find("nope"), std::string::npos);
}

TEST(CliTest, UsageErrors) {
  const auto m = fixture("references.jsonl");
  const auto c = fixture("stage1_candidates.jsonl");
  EXPECT_EQ(run({}).code, kExitUsage);
  EXPECT_EQ(run({"frobnicate"}).code, kExitUsage);
  EXPECT_EQ(run({"score", "--manifest", m}).code, kExitUsage);
  EXPECT_EQ(run({"score", "--manifest", m, "--candidates", c, "--metrics", "bleu,x"}).code, kExitUsage);
  EXPECT_EQ(run({"score", "--manifest", m, "--candidates", c, "--format", "xml"}).code, kExitUsage);
  EXPECT_EQ(run({"score", "--manifest", m, "--candidates", c, "--preset", "x"}).code, kExitUsage);
  EXPECT_EQ(run({"score", "--manifest", m, "--candidates", c, "--rouge-beta", "0"}).code, kExitUsage);
  EXPECT_EQ(run({"score", "--manifest", m, "--candidates", c, "--workers", "0"}).code, kExitUsage);
  EXPECT_EQ(run({"score", "--manifest", m, "--candidates", "/nonexistent"}).code, kExitUsage);
  EXPECT_EQ(run({"stats", "--manifest", "/nonexistent"}).code, kExitUsage);
  EXPECT_EQ(run({"stats", "--manifest", m, "--min-freq", "0"}).code, kExitUsage);
  EXPECT_EQ(run({"lint", "--manifest", m, "--format", "xml"}).code, kExitUsage);
  EXPECT_EQ(run({"--help"}).code, kExitOk);
}

TEST(CliTest, LintReferenceManifestPasses) {
  auto r = run({"lint", "--manifest", fixture("references.jsonl")});
  EXPECT_EQ(r.code, kExitOk) << r.out;
  EXPECT_NE(r.out.find(" 0 errors"), std::string::npos);
}

TEST(CliTest, LintContractionFails) {
  auto r = run({"lint", "--manifest", fixture("contraction.jsonl"), "--format", "jsonl"});
  EXPECT_EQ(r.code, kExitFailure);
  std::size_t errors = 0;
  std::istringstream in(r.out);
  for (std::string line; std::getline(in, line);) {
    auto d = nlohmann::json::parse(line);
    if (d["severity"] == "error") {
      ++errors;
      EXPECT_EQ(d["rule"], "G014");
      EXPECT_EQ(d["record_id"], "seen_bdd_001");
    }
  }
  EXPECT_EQ(errors, 1u) << r.out;
}

TEST(CliTest, LintAdvisoryOnlyPasses) {
  auto r = run({"lint", "--manifest", fixture("advisory_only.jsonl")});
  EXPECT_EQ(r.code, kExitOk) << r.out;
  EXPECT_NE(r.out.find("warning"), std::string::npos);
}

TEST(CliTest, Stats) {
  auto r = run({"stats", "--manifest", fixture("categories.jsonl"), "--top", "2"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  EXPECT_NE(r.out.find("vocabulary size: 55 (51 retained + 4 special)"), std::string::npos) << r.out;
  TempDir dir;
  auto path = dir.path() / "empty.jsonl";
  std::ofstream(path).close();
  auto e = run({"stats", "--manifest", path.string()});
  EXPECT_EQ(e.code, kExitOk) << e.err;
  EXPECT_NE(e.out.find("records: 0"), std::string::npos);
}

}  // namespace
}  // namespace scenedesc
