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

#include "scenedesc/serve.hpp"

#include <algorithm>
#include <mutex>
#include <stdexcept>

#include <httplib.h>
#include <json.hpp>

namespace scenedesc {

RecordStore::RecordStore(DatasetManifest manifest, std::filesystem::path path, Linter linter)
    : manifest_(std::move(manifest)), path_(std::move(path)), linter_(std::move(linter)) {}

std::optional<ImageRecord> RecordStore::get(std::string_view id) const {
  std::shared_lock lock(mu_);
  if (const auto* r = manifest_.find(id)) return *r;
  return std::nullopt;
}

std::optional<ImageRecord> RecordStore::next_unannotated() const {
  std::shared_lock lock(mu_);
  for (const auto& r : manifest_.records) {
    if (r.category == Category::kSeen && !r.annotated()) return r;
  }
  return std::nullopt;
}

DatasetManifest RecordStore::snapshot() const {
  std::shared_lock lock(mu_);
  return manifest_;
}

RecordStore::PutResult RecordStore::put(std::string_view id, std::vector<std::string> descriptions,
                                        std::uint64_t expected_version) {
  std::unique_lock lock(mu_);
  auto it = std::find_if(manifest_.records.begin(), manifest_.records.end(),
                         [&](const ImageRecord& r) { return r.id == id; });
  PutResult result;
  if (it == manifest_.records.end()) {
    result.status = PutStatus::kNotFound;
    result.message = "no record '" + std::string(id) + "'";
    return result;
  }
  result.record = *it;
  if (it->version != expected_version) {
    result.status = PutStatus::kConflict;
    result.message = "stale version " + std::to_string(expected_version) + ", current is " +
                     std::to_string(it->version);
    return result;
  }

  ImageRecord draft = *it;
  draft.descriptions = std::move(descriptions);
  if (auto problem = description_count_problem(draft); !problem.empty() ||
                                                       (draft.category == Category::kSeen && !draft.annotated())) {
    result.status = PutStatus::kInvalid;
    result.report = linter_.lint_set(draft);
    result.report.pass = false;
    result.message = problem.empty() ? "descriptions must not be empty" : problem;
    return result;
  }
  if (draft.category == Category::kSeen) {
    result.report = linter_.lint_set(draft);
    if (!result.report.pass) {
      result.status = PutStatus::kInvalid;
      result.message = "descriptions fail error-severity guideline checks";
      return result;
    }
  }
  draft.version = it->version + 1;

  DatasetManifest next = manifest_;
  next.records[static_cast<std::size_t>(it - manifest_.records.begin())] = draft;
  export_manifest(next, path_);  // throws before memory changes
  manifest_ = std::move(next);
  result.record = std::move(draft);
  return result;
}

void RecordStore::persist() const {
  std::shared_lock lock(mu_);
  export_manifest(manifest_, path_);
}

namespace {

using ojson = nlohmann::ordered_json;

void send_json(httplib::Response& res, int status, const ojson& body) {
  res.status = status;
  res.set_content(body.dump(), "application/json");
}

void send_error(httplib::Response& res, int status, const std::string& message) {
  send_json(res, status, ojson{{"error", message}});
}

}  // namespace

struct ApiServer::Impl {
  RecordStore& store;
  ServeOptions options;
  httplib::Server server;

  Impl(RecordStore& s, ServeOptions o) : store(s), options(std::move(o)) { routes(); }

  void routes() {
    server.Get("/api/records", [this](const httplib::Request&, httplib::Response& res) {
      ojson list = ojson::array();
      for (const auto& r : store.snapshot().records) {
        list.push_back({{"id", r.id},
                        {"category", category_name(r.category)},
                        {"annotated", r.annotated()},
                        {"version", r.version}});
      }
      send_json(res, 200, list);
    });

    server.Get(R"(/api/records/([^/]+))", [this](const httplib::Request& req, httplib::Response& res) {
      auto r = store.get(req.matches[1].str());
      if (!r) return send_error(res, 404, "no record '" + req.matches[1].str() + "'");
      send_json(res, 200, record_to_json(*r));
    });

    server.Get("/api/next-unannotated", [this](const httplib::Request&, httplib::Response& res) {
      auto r = store.next_unannotated();
      if (!r) return send_error(res, 404, "every seen record is annotated");
      send_json(res, 200, record_to_json(*r));
    });

    server.Post("/api/lint", [this](const httplib::Request& req, httplib::Response& res) {
      ImageRecord draft;
      try {
        auto body = nlohmann::json::parse(req.body);
        if (!body.is_object() || !body.contains("descriptions") || !body["descriptions"].is_array()) {
          return send_error(res, 400, "body must be an object with a 'descriptions' array");
        }
        for (const auto& d : body["descriptions"]) {
          if (!d.is_string()) return send_error(res, 400, "descriptions must be strings");
          draft.descriptions.push_back(d.get<std::string>());
        }
        if (body.contains("id") && body["id"].is_string()) draft.id = body["id"].get<std::string>();
        if (body.contains("meta") && body["meta"].is_object()) {
          const auto& m = body["meta"];
          if (m.contains("weather") && m["weather"].is_string()) draft.meta.weather = m["weather"];
          if (m.contains("lighting") && m["lighting"].is_string()) draft.meta.lighting = m["lighting"];
        }
      } catch (const nlohmann::json::exception& e) {
        return send_error(res, 400, std::string("invalid JSON: ") + e.what());
      }
      send_json(res, 200, lint_report_to_json(store.lint(draft)));
    });

    server.Put(R"(/api/records/([^/]+))", [this](const httplib::Request& req, httplib::Response& res) {
      std::vector<std::string> descriptions;
      std::uint64_t version = 0;
      try {
        auto body = nlohmann::json::parse(req.body);
        if (!body.is_object() || !body.contains("descriptions") || !body["descriptions"].is_array() ||
            !body.contains("version") || !body["version"].is_number_unsigned()) {
          return send_error(res, 400, "body must carry a 'descriptions' array and an integer 'version'");
        }
        for (const auto& d : body["descriptions"]) {
          if (!d.is_string()) return send_error(res, 400, "descriptions must be strings");
          descriptions.push_back(d.get<std::string>());
        }
        version = body["version"].get<std::uint64_t>();
      } catch (const nlohmann::json::exception& e) {
        return send_error(res, 400, std::string("invalid JSON: ") + e.what());
      }
      RecordStore::PutResult result;
      try {
        result = store.put(req.matches[1].str(), std::move(descriptions), version);
      } catch (const std::exception& e) {
        return send_error(res, 500, std::string("write failed: ") + e.what());
      }
      switch (result.status) {
        case RecordStore::PutStatus::kOk:
          return send_json(res, 200, record_to_json(result.record));
        case RecordStore::PutStatus::kNotFound:
          return send_error(res, 404, result.message);
        case RecordStore::PutStatus::kConflict:
          return send_json(res, 409, ojson{{"error", result.message},
                                           {"current_version", result.record.version}});
        case RecordStore::PutStatus::kInvalid:
          return send_json(res, 422, ojson{{"error", result.message},
                                           {"report", lint_report_to_json(result.report)}});
      }
    });

    server.Post("/api/export", [this](const httplib::Request&, httplib::Response& res) {
      try {
        store.persist();
      } catch (const std::exception& e) {
        return send_error(res, 500, std::string("export failed: ") + e.what());
      }
      send_json(res, 200, ojson{{"path", store.path().string()},
                                {"records", store.snapshot().records.size()}});
    });

    server.Get("/api/rules", [](const httplib::Request&, httplib::Response& res) {
      ojson list = ojson::array();
      for (const auto& r : rule_catalog()) list.push_back(rule_to_json(r));
      send_json(res, 200, list);
    });

    if (!options.static_dir.empty() && !server.set_mount_point("/", options.static_dir.string())) {
      throw std::runtime_error("static directory not found: " + options.static_dir.string());
    }
  }
};

ApiServer::ApiServer(RecordStore& store, ServeOptions options)
    : impl_(std::make_unique<Impl>(store, std::move(options))) {}

ApiServer::~ApiServer() = default;

int ApiServer::bind() {
  const auto& o = impl_->options;
  if (o.port == 0) {
    port_ = impl_->server.bind_to_any_port(o.host);
  } else {
    port_ = impl_->server.bind_to_port(o.host, o.port) ? o.port : -1;
  }
  if (port_ < 0) throw std::runtime_error("cannot bind " + o.host + ":" + std::to_string(o.port));
  return port_;
}

void ApiServer::listen() { impl_->server.listen_after_bind(); }

void ApiServer::stop() { impl_->server.stop(); }

}  // namespace scenedesc
