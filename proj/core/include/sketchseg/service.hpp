/* Copyright 2026 The SketchSeg Authors. All Rights Reserved.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/

#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "sketchseg/network.hpp"
#include "sketchseg/refine.hpp"
#include "sketchseg/retrieval.hpp"

namespace sketchseg {

struct CategoryConfig {
  std::string name;
  std::string checkpoint;
  std::string featuredb;  // optional
};

/// Flat key=value file: `category.<name>.checkpoint`, `category.<name>.featuredb`,
/// `listen` (host:port), `cd`, `cs`, `static` (directory served at /). `#` starts a comment.
struct ServiceConfig {
  std::string host = "127.0.0.1";
  int port = 8080;
  EnergyParams params;
  std::string static_dir;
  std::vector<CategoryConfig> categories;
};

ServiceConfig parse_service_config(std::string_view text, const std::string& base_dir = "");
ServiceConfig load_service_config(const std::string& path);
/// The SKSEG_CONFIG environment variable when set, otherwise `fallback`.
std::string resolve_config_path(const std::string& fallback);

struct HttpReply {
  int status = 200;
  std::string content_type = "application/json";
  std::string body;
};

/// Request handling independent of the transport. Models and databases are
/// immutable after construction, so `handle` is safe to call concurrently.
class Service {
 public:
  struct Category {
    std::shared_ptr<const Model> model;
    std::shared_ptr<const FeatureDB> db;  // null when absent
  };

  /// Loads every checkpoint and feature database; a missing file fails with its path.
  explicit Service(const ServiceConfig& config);
  Service(const ServiceConfig& config, std::map<std::string, Category> categories);

  HttpReply handle(const std::string& method, const std::string& path, const std::string& body) const;

  /// Blocks serving HTTP/1.1 until `stop` is called from another thread.
  void listen();
  void stop();
  void wait_until_ready() const;

  const ServiceConfig& config() const noexcept { return config_; }

 private:
  HttpReply categories() const;
  HttpReply segment(const std::string& body) const;
  HttpReply retrieve(const std::string& body) const;
  HttpReply assemble_parts(const std::string& body) const;
  HttpReply index() const;

  ServiceConfig config_;
  std::map<std::string, Category> categories_;
  struct Server;
  std::shared_ptr<Server> server_;
};

}  // namespace sketchseg
