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

// File-backed record store and the HTTP/JSON annotation API.
//
//   GET  /api/records               ids, versions and annotation state
//   GET  /api/records/:id           one record
//   GET  /api/next-unannotated      first seen record without descriptions (404 when none)
//   POST /api/lint                  {descriptions, id?, meta?} -> LintReport
//   PUT  /api/records/:id           {descriptions, version} -> updated record
//                                   409 on a stale version, 422 with the report when invalid
//   POST /api/export                rewrite the manifest file atomically
//   GET  /api/rules                 guideline catalog

#pragma once

#include <cstdint>
#include <filesystem>
#include <memory>
#include <optional>
#include <shared_mutex>
#include <string>
#include <string_view>
#include <vector>

#include "scenedesc/dataset.hpp"
#include "scenedesc/lint.hpp"

namespace scenedesc {

class RecordStore {
 public:
  // Writes go to `path` before they are acknowledged.
  RecordStore(DatasetManifest manifest, std::filesystem::path path, Linter linter = Linter());

  std::optional<ImageRecord> get(std::string_view id) const;
  std::optional<ImageRecord> next_unannotated() const;
  DatasetManifest snapshot() const;

  LintReport lint(const ImageRecord& draft) const { return linter_.lint_set(draft); }

  enum class PutStatus { kOk, kNotFound, kConflict, kInvalid };
  struct PutResult {
    PutStatus status = PutStatus::kOk;
    ImageRecord record;  // stored record after success, current one otherwise
    LintReport report;
    std::string message;
  };

  // Replaces the descriptions when `expected_version` matches, bumps the
  // version and persists. Throws std::runtime_error when the file write fails;
  // memory is left unchanged in that case.
  PutResult put(std::string_view id, std::vector<std::string> descriptions,
                std::uint64_t expected_version);

  void persist() const;
  const std::filesystem::path& path() const { return path_; }

 private:
  mutable std::shared_mutex mu_;
  DatasetManifest manifest_;
  std::filesystem::path path_;
  Linter linter_;
};

struct ServeOptions {
  std::string host = "127.0.0.1";
  int port = 8080;  // 0 picks a free port
  std::filesystem::path static_dir;
};

class ApiServer {
 public:
  ApiServer(RecordStore& store, ServeOptions options);
  ~ApiServer();
  ApiServer(const ApiServer&) = delete;
  ApiServer& operator=(const ApiServer&) = delete;

  // Returns the bound port; throws std::runtime_error when binding fails.
  int bind();
  // Blocks until stop().
  void listen();
  void stop();
  int port() const { return port_; }

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
  int port_ = -1;
};

}  // namespace scenedesc
