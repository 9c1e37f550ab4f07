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

#include "sketchseg/service.hpp"

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <httplib.h>
#include <json.hpp>

#include "sketchseg/checkpoint.hpp"
#include "sketchseg/errors.hpp"
#include "sketchseg/pipeline.hpp"
#include "sketchseg/sketch_json.hpp"

namespace sketchseg {

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

constexpr std::size_t kDefaultTopN = 5;

constexpr const char* kFallbackIndex =
    "<!doctype html>\n<html><head><meta charset=\"utf-8\"><title>sketchseg</title></head>\n"
    "<body><h1>sketchseg</h1><p>No studio assets are installed. Set <code>static</code> in the service config "
    "to serve them here.</p><p>API: GET /v1/categories, POST /v1/segment, POST /v1/retrieve, "
    "POST /v1/assemble.</p></body></html>\n";

struct ApiError {
  int status;
  std::string code;
  std::string message;
};

HttpReply error_reply(const ApiError& e) {
  json j{{"error", {{"code", e.code}, {"message", e.message}}}};
  return {e.status, "application/json", j.dump()};
}

HttpReply json_reply(json j, std::chrono::steady_clock::time_point t0) {
  j["latency_ms"] = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  return {200, "application/json", j.dump()};
}

json parse_body(const std::string& body) {
  json j = json::parse(body, nullptr, false);
  if (j.is_discarded() || !j.is_object()) throw ApiError{400, "invalid_json", "request body must be a JSON object"};
  return j;
}

Sketch sketch_from(const json& j) {
  try {
    return parse_sketch(j.dump());
  } catch (const ParseError& e) {
    throw ApiError{400, "invalid_sketch", e.what()};
  }
}

double number_or(const json& j, const char* key, double fallback) {
  auto it = j.find(key);
  if (it == j.end() || it->is_null()) return fallback;
  if (!it->is_number()) throw ApiError{400, "invalid_request", std::string(key) + " must be a number"};
  return it->get<double>();
}

}  // namespace

ServiceConfig parse_service_config(std::string_view text, const std::string& base_dir) {
  ServiceConfig cfg;
  std::map<std::string, CategoryConfig> cats;
  std::vector<std::string> order;
  auto resolve = [&](const std::string& p) {
    return base_dir.empty() || fs::path(p).is_absolute() ? p : (fs::path(base_dir) / p).string();
  };
  std::istringstream in{std::string(text)};
  std::string line;
  int n = 0;
  while (std::getline(in, line)) {
    ++n;
    if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    auto trim = [](std::string s) {
      s.erase(0, s.find_first_not_of(" \t\r"));
      s.erase(s.find_last_not_of(" \t\r") + 1);
      return s;
    };
    line = trim(line);
    if (line.empty()) continue;
    auto eq = line.find('=');
    if (eq == std::string::npos) throw ParseError("line " + std::to_string(n), "expected key=value");
    const std::string key = trim(line.substr(0, eq)), value = trim(line.substr(eq + 1));
    const std::string where = "line " + std::to_string(n);
    auto number = [&]() {
      try {
        std::size_t used = 0;
        double v = std::stod(value, &used);
        if (used != value.size()) throw std::invalid_argument(value);
        return v;
      } catch (const std::exception&) {
        throw ParseError(where, "'" + key + "' needs a number");
      }
    };
    if (key == "listen") {
      auto colon = value.rfind(':');
      if (colon == std::string::npos) throw ParseError(where, "listen must be host:port");
      cfg.host = value.substr(0, colon);
      try {
        cfg.port = std::stoi(value.substr(colon + 1));
      } catch (const std::exception&) {
        throw ParseError(where, "bad port");
      }
    } else if (key == "cd") {
      cfg.params.c_d = number();
    } else if (key == "cs") {
      cfg.params.c_s = number();
    } else if (key == "static") {
      cfg.static_dir = resolve(value);
    } else if (key.rfind("category.", 0) == 0) {
      auto dot = key.rfind('.');
      const std::string name = key.substr(9, dot - 9), field = key.substr(dot + 1);
      if (name.empty() || dot <= 9) throw ParseError(where, "expected category.<name>.<field>");
      if (!cats.count(name)) order.push_back(name);
      cats[name].name = name;
      if (field == "checkpoint") {
        cats[name].checkpoint = resolve(value);
      } else if (field == "featuredb") {
        cats[name].featuredb = resolve(value);
      } else {
        throw ParseError(where, "unknown category field '" + field + "'");
      }
    } else {
      throw ParseError(where, "unknown key '" + key + "'");
    }
  }
  for (const auto& name : order) {
    if (cats[name].checkpoint.empty()) throw ParseError("category." + name, "missing checkpoint");
    cfg.categories.push_back(cats[name]);
  }
  return cfg;
}

ServiceConfig load_service_config(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw Error("cannot open config " + path);
  std::stringstream ss;
  ss << f.rdbuf();
  try {
    return parse_service_config(ss.str(), fs::path(path).parent_path().string());
  } catch (const ParseError& e) {
    throw ParseError(path + ":" + e.path(), e.what());
  }
}

std::string resolve_config_path(const std::string& fallback) {
  const char* env = std::getenv("SKSEG_CONFIG");
  return env && *env ? env : fallback;
}

struct Service::Server {
  httplib::Server http;
};

Service::Service(const ServiceConfig& config) : config_(config), server_(std::make_shared<Server>()) {
  for (const auto& c : config.categories) {
    if (!fs::exists(c.checkpoint)) throw Error("checkpoint not found: " + c.checkpoint);
    Category cat;
    cat.model = std::make_shared<const Model>(load_checkpoint(c.checkpoint));
    if (cat.model->category != c.name)
      throw Error("checkpoint " + c.checkpoint + " holds category '" + cat.model->category + "', expected '" + c.name +
                  "'");
    if (!c.featuredb.empty()) {
      if (!fs::exists(c.featuredb)) throw Error("feature database not found: " + c.featuredb);
      cat.db = std::make_shared<const FeatureDB>(load_feature_db(c.featuredb));
    }
    categories_[c.name] = std::move(cat);
  }
}

Service::Service(const ServiceConfig& config, std::map<std::string, Category> categories)
    : config_(config), categories_(std::move(categories)), server_(std::make_shared<Server>()) {}

HttpReply Service::handle(const std::string& method, const std::string& path, const std::string& body) const {
  try {
    if (path == "/v1/categories") {
      if (method != "GET") throw ApiError{405, "method_not_allowed", "use GET"};
      return categories();
    }
    if (path == "/v1/segment" || path == "/v1/retrieve" || path == "/v1/assemble") {
      if (method != "POST") throw ApiError{405, "method_not_allowed", "use POST"};
      if (path == "/v1/segment") return segment(body);
      if (path == "/v1/retrieve") return retrieve(body);
      return assemble_parts(body);
    }
    if (path == "/" || path == "/index.html") {
      if (method != "GET") throw ApiError{405, "method_not_allowed", "use GET"};
      return index();
    }
    throw ApiError{404, "not_found", "no route for " + path};
  } catch (const ApiError& e) {
    return error_reply(e);
  } catch (const InvalidArgument& e) {
    return error_reply({400, "invalid_request", e.what()});
  } catch (const ShapeError& e) {
    return error_reply({400, "invalid_request", e.what()});
  } catch (const std::exception& e) {
    return error_reply({500, "internal", e.what()});
  }
}

HttpReply Service::categories() const {
  const auto t0 = std::chrono::steady_clock::now();
  json list = json::array();
  for (const auto& [name, cat] : categories_)
    list.push_back({{"name", name}, {"k", cat.model->spec.k}, {"labels", cat.model->label_names}});
  return json_reply({{"categories", list}}, t0);
}

HttpReply Service::segment(const std::string& body) const {
  const auto t0 = std::chrono::steady_clock::now();
  const json req = parse_body(body);
  const Sketch sketch = sketch_from(req);
  if (sketch.empty()) throw ApiError{400, "empty_sketch", "the sketch has no points"};
  auto it = categories_.find(sketch.category);
  if (it == categories_.end()) throw ApiError{404, "unknown_category", "no model for '" + sketch.category + "'"};

  SegmentOptions opt;
  opt.params = {number_or(req, "cd", config_.params.c_d), number_or(req, "cs", config_.params.c_s)};
  if (auto r = req.find("refine"); r != req.end() && !r->is_null()) {
    if (!r->is_boolean()) throw ApiError{400, "invalid_request", "refine must be a boolean"};
    opt.refine = r->get<bool>();
  }
  const SegmentResult res = segment_sketch(sketch, *it->second.model, opt);
  json strokes = json::array(), raw = json::array();
  for (std::size_t s = 0; s < res.labels.size(); ++s) {
    strokes.push_back({{"labels", res.labels[s]}, {"majority", res.majority[s]}});
    raw.push_back({{"labels", res.raw[s]}, {"majority", majority_label(res.raw[s])}});
  }
  json timing{{"rasterize", res.timing_ms.rasterize}, {"infer", res.timing_ms.infer}, {"refine", res.timing_ms.refine}};
  return json_reply({{"strokes", strokes}, {"raw", raw}, {"labels", res.label_names}, {"timing_ms", timing}}, t0);
}

HttpReply Service::retrieve(const std::string& body) const {
  const auto t0 = std::chrono::steady_clock::now();
  const json req = parse_body(body);
  auto sk = req.find("sketch");
  const Sketch sketch = sketch_from(sk != req.end() ? *sk : req);
  if (sketch.empty()) throw ApiError{400, "empty_sketch", "the sketch has no points"};
  auto it = categories_.find(sketch.category);
  if (it == categories_.end()) throw ApiError{404, "unknown_category", "no model for '" + sketch.category + "'"};
  if (!it->second.db) throw ApiError{404, "no_feature_db", "no feature database for '" + sketch.category + "'"};
  const Model& model = *it->second.model;

  std::vector<std::vector<int>> labels;
  if (auto st = req.find("strokes"); st != req.end() && sk != req.end()) {
    if (!st->is_array() || st->size() != sketch.strokes.size())
      throw ApiError{400, "invalid_request", "strokes must match the sketch"};
    for (const auto& s : *st) {
      auto l = s.find("labels");
      if (!s.is_object() || l == s.end() || !l->is_array())
        throw ApiError{400, "invalid_request", "each stroke needs a labels array"};
      std::vector<int> v;
      for (const auto& x : *l) {
        if (!x.is_number_integer()) throw ApiError{400, "invalid_request", "labels must be integers"};
        v.push_back(x.get<int>());
      }
      labels.push_back(std::move(v));
    }
  } else {
    SegmentOptions opt;
    opt.params = config_.params;
    labels = segment_sketch(sketch, model, opt).labels;
  }
  std::size_t top_n = kDefaultTopN;
  if (auto tn = req.find("top_n"); tn != req.end()) {
    if (!tn->is_number_unsigned() || tn->get<std::size_t>() == 0)
      throw ApiError{400, "invalid_request", "top_n must be a positive integer"};
    top_n = tn->get<std::size_t>();
  }
  json parts = json::array();
  for (const auto& q : part_queries(sketch, labels, model)) {
    QueryResult r = query_parts(q.feature, q.label, *it->second.db, top_n);
    json cands = json::array();
    for (const auto& c : r.candidates) cands.push_back({{"mesh", c.mesh}, {"camera", c.camera}, {"distance", c.distance}});
    json part{{"label", q.label}, {"candidates", cands}};
    if (!r.warning.empty()) part["warning"] = r.warning;
    parts.push_back(std::move(part));
  }
  return json_reply({{"parts", parts}}, t0);
}

HttpReply Service::assemble_parts(const std::string& body) const {
  const auto t0 = std::chrono::steady_clock::now();
  const json req = parse_body(body);
  auto cat = req.find("category");
  if (cat == req.end() || !cat->is_string()) throw ApiError{400, "invalid_request", "category must be a string"};
  auto it = categories_.find(cat->get<std::string>());
  if (it == categories_.end()) throw ApiError{404, "unknown_category", "no model for '" + cat->get<std::string>() + "'"};
  if (!it->second.db) throw ApiError{404, "no_feature_db", "no feature database for '" + it->first + "'"};
  auto sel = req.find("selections");
  if (sel == req.end() || !sel->is_array() || sel->empty())
    throw ApiError{400, "invalid_request", "selections must be a non-empty array"};
  std::vector<Selection> selections;
  for (const auto& s : *sel) {
    if (!s.is_object() || !s.contains("label") || !s["label"].is_number_integer() || !s.contains("mesh") ||
        !s["mesh"].is_string())
      throw ApiError{400, "invalid_request", "each selection needs an integer label and a mesh id"};
    int camera = s.contains("camera") && s["camera"].is_number_integer() ? s["camera"].get<int>() : 0;
    selections.push_back({s["label"].get<int>(), s["mesh"].get<std::string>(), camera});
  }
  const Assembly a = assemble(selections, *it->second.db);
  json placed = json::array();
  for (const auto& p : a.parts)
    placed.push_back({{"label", p.label},
                      {"mesh", p.mesh},
                      {"camera", p.camera},
                      {"center", {p.center.x, p.center.y, p.center.z}},
                      {"size", {p.size.x, p.size.y, p.size.z}}});
  return json_reply({{"placed", placed}, {"residual", a.residual}}, t0);
}

HttpReply Service::index() const {
  if (!config_.static_dir.empty()) {
    std::ifstream f(fs::path(config_.static_dir) / "index.html", std::ios::binary);
    if (f) {
      std::stringstream ss;
      ss << f.rdbuf();
      return {200, "text/html; charset=utf-8", ss.str()};
    }
  }
  return {200, "text/html; charset=utf-8", kFallbackIndex};
}

void Service::listen() {
  auto& http = server_->http;
  auto bridge = [this](const httplib::Request& req, httplib::Response& res) {
    HttpReply r = handle(req.method, req.path, req.body);
    res.status = r.status;
    res.set_content(r.body, r.content_type);
  };
  http.Get("/v1/categories", bridge);
  http.Post("/v1/segment", bridge);
  http.Post("/v1/retrieve", bridge);
  http.Post("/v1/assemble", bridge);
  http.Get("/", bridge);
  if (!config_.static_dir.empty()) http.set_mount_point("/", config_.static_dir);
  http.set_error_handler([](const httplib::Request& req, httplib::Response& res) {
    if (!res.body.empty()) return;
    HttpReply r = error_reply({res.status, res.status == 404 ? "not_found" : "http_error", "no route for " + req.path});
    res.set_content(r.body, r.content_type);
  });
  if (!http.listen(config_.host, config_.port))
    throw Error("cannot listen on " + config_.host + ":" + std::to_string(config_.port));
}

void Service::wait_until_ready() const { server_->http.wait_until_ready(); }

void Service::stop() { server_->http.stop(); }

}  // namespace sketchseg
