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

#include <gtest/gtest.h>

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <thread>
#include <unistd.h>

#include "httplib.h"
#include "json.hpp"
#include "sketchseg/checkpoint.hpp"
#include "sketchseg/errors.hpp"
#include "sketchseg/service.hpp"
#include "sketchseg/sketch_json.hpp"
#include "sketchseg/synth.hpp"

using namespace sketchseg;
using nlohmann::json;
namespace fs = std::filesystem;

namespace {

std::shared_ptr<const Model> lamp_model() {
  return std::make_shared<const Model>(
      Model::initialize(build_network(4, Profile::Reduced), "lamp", synth_category("lamp").label_names(), 8));
}

std::shared_ptr<const FeatureDB> lamp_db() {
  FeatureDB db;
  db.category = "lamp";
  db.configurations = {{"lamp_a", {{1, {{0, -0.8, 0}, {0.6, 0.1, 0.6}}}, {2, {{0, 0, 0}, {0.05, 1.4, 0.05}}},
                                    {3, {{0, 0.8, 0}, {0.7, 0.4, 0.7}}}}}};
  for (int l = 1; l <= 3; ++l) db.features.push_back({l, "lamp_a", 0, db.configurations[0].parts[l - 1].second,
                                                      std::vector<float>(kFeatureLength, 0.1f * l)});
  return std::make_shared<const FeatureDB>(db);
}

Service make_service(bool with_db = true) {
  ServiceConfig cfg;
  cfg.categories = {{"lamp", "", ""}};
  return Service(cfg, {{"lamp", {lamp_model(), with_db ? lamp_db() : nullptr}}});
}

std::string lamp_request() {
  Sketch sk = synth_sketch_dataset(synth_category("lamp"), 1, 12, 64)[0].sketch;
  for (auto& s : sk.strokes) s.gt_labels.clear();
  return serialize_sketch(sk);
}

json without_timing(const std::string& body) {
  json j = json::parse(body);
  EXPECT_TRUE(j.contains("latency_ms")) << body;
  j.erase("latency_ms");
  j.erase("timing_ms");
  return j;
}

void expect_error(const HttpReply& r, int status, const std::string& code) {
  EXPECT_EQ(r.status, status) << r.body;
  const json j = json::parse(r.body);
  EXPECT_EQ(j["error"]["code"], code) << r.body;
  EXPECT_TRUE(j["error"]["message"].is_string());
}

}  // namespace

TEST(ServiceConfig, ParsesKeysAndResolvesPaths) {
  const ServiceConfig c = parse_service_config(
      "# demo\nlisten = 0.0.0.0:9000\ncd = 2\ncs=50\nstatic = web\n"
      "category.lamp.checkpoint = lamp.ckpt  # trailing comment\ncategory.lamp.featuredb=/abs/lamp.skfd\n"
      "category.mug.checkpoint = mug.ckpt\n",
      "/base");
  EXPECT_EQ(c.host, "0.0.0.0");
  EXPECT_EQ(c.port, 9000);
  EXPECT_EQ(c.params.c_d, 2.0);
  EXPECT_EQ(c.params.c_s, 50.0);
  EXPECT_EQ(c.static_dir, "/base/web");
  ASSERT_EQ(c.categories.size(), 2u);
  EXPECT_EQ(c.categories[0].name, "lamp");
  EXPECT_EQ(c.categories[0].checkpoint, "/base/lamp.ckpt");
  EXPECT_EQ(c.categories[0].featuredb, "/abs/lamp.skfd");
  EXPECT_EQ(c.categories[1].featuredb, "");
}

TEST(ServiceConfig, RejectsMalformedLines) {
  EXPECT_THROW(parse_service_config("listen 8080\n"), ParseError);
  EXPECT_THROW(parse_service_config("listen = 8080\n"), ParseError);
  EXPECT_THROW(parse_service_config("cd = lots\n"), ParseError);
  EXPECT_THROW(parse_service_config("colour = blue\n"), ParseError);
  EXPECT_THROW(parse_service_config("category.lamp.weights = x\n"), ParseError);
}

TEST(ServiceConfig, EnvironmentOverridesThePath) {
  unsetenv("SKSEG_CONFIG");
  EXPECT_EQ(resolve_config_path("fallback.conf"), "fallback.conf");
  setenv("SKSEG_CONFIG", "/etc/sketchseg.conf", 1);
  EXPECT_EQ(resolve_config_path("fallback.conf"), "/etc/sketchseg.conf");
  unsetenv("SKSEG_CONFIG");
}

TEST(Service, ListsCategories) {
  const Service s = make_service();
  const HttpReply r = s.handle("GET", "/v1/categories", "");
  ASSERT_EQ(r.status, 200);
  const json j = json::parse(r.body);
  ASSERT_EQ(j["categories"].size(), 1u);
  EXPECT_EQ(j["categories"][0]["name"], "lamp");
  EXPECT_EQ(j["categories"][0]["k"], 4);
  EXPECT_EQ(j["categories"][0]["labels"][3], "shade");
}

TEST(Service, SegmentsAndRepeatsIdentically) {
  const Service s = make_service();
  const std::string req = lamp_request();
  const HttpReply a = s.handle("POST", "/v1/segment", req), b = s.handle("POST", "/v1/segment", req);
  ASSERT_EQ(a.status, 200) << a.body;
  EXPECT_EQ(without_timing(a.body), without_timing(b.body));
  const json j = json::parse(a.body);
  EXPECT_EQ(j["strokes"].size(), json::parse(req)["strokes"].size());
  for (const auto& st : j["strokes"]) {
    EXPECT_TRUE(st["labels"].is_array());
    EXPECT_GE(st["majority"].get<int>(), 1);
  }
  EXPECT_TRUE(j["timing_ms"].contains("infer"));
}

TEST(Service, ReportsRequestErrors) {
  const Service s = make_service(false);
  expect_error(s.handle("POST", "/v1/segment", R"({"version":1,"category":"lamp","canvas":[256,256],"strokes":[]})"),
               400, "empty_sketch");
  expect_error(s.handle("POST", "/v1/segment",
                        R"({"version":1,"category":"boat","canvas":[256,256],"strokes":[{"points":[[1,1]]}]})"),
               404, "unknown_category");
  expect_error(s.handle("POST", "/v1/segment", "{not json"), 400, "invalid_json");
  expect_error(s.handle("POST", "/v1/retrieve", lamp_request()), 404, "no_feature_db");
  expect_error(s.handle("GET", "/v1/segment", ""), 405, "method_not_allowed");
  expect_error(s.handle("GET", "/v2/anything", ""), 404, "not_found");
}

TEST(Service, RetrievesAndAssembles) {
  const Service s = make_service();
  const HttpReply r = s.handle("POST", "/v1/retrieve", lamp_request());
  ASSERT_EQ(r.status, 200) << r.body;
  const json j = json::parse(r.body);
  ASSERT_FALSE(j["parts"].empty());
  for (const auto& p : j["parts"]) EXPECT_EQ(p["candidates"][0]["mesh"], "lamp_a");

  const HttpReply a = s.handle(
      "POST", "/v1/assemble",
      R"({"category":"lamp","selections":[{"label":1,"mesh":"lamp_a"},{"label":3,"mesh":"lamp_a","camera":0}]})");
  ASSERT_EQ(a.status, 200) << a.body;
  const json aj = json::parse(a.body);
  ASSERT_EQ(aj["placed"].size(), 2u);
  EXPECT_NEAR(aj["placed"][1]["center"][1].get<double>(), 1.6, 1e-9);
  EXPECT_NEAR(aj["residual"].get<double>(), 0.0, 1e-12);
  expect_error(s.handle("POST", "/v1/assemble", R"({"category":"lamp","selections":[]})"), 400, "invalid_request");
}

TEST(Service, ServesTheIndexPage) {
  const Service s = make_service();
  const HttpReply r = s.handle("GET", "/", "");
  EXPECT_EQ(r.status, 200);
  EXPECT_EQ(r.content_type.rfind("text/html", 0), 0u);
  EXPECT_NE(r.body.find("<html"), std::string::npos);
}

TEST(Service, MissingCheckpointNamesThePath) {
  ServiceConfig cfg;
  cfg.categories = {{"lamp", "/nonexistent/lamp.ckpt", ""}};
  try {
    Service s(cfg);
    FAIL() << "expected an error";
  } catch (const Error& e) {
    EXPECT_NE(std::string(e.what()).find("/nonexistent/lamp.ckpt"), std::string::npos) << e.what();
  }
}

TEST(Service, LoadsFromConfigFiles) {
  const fs::path dir = fs::temp_directory_path() / "sketchseg_service_cfg";
  fs::remove_all(dir);
  fs::create_directories(dir);
  save_checkpoint(*lamp_model(), (dir / "lamp.ckpt").string());
  save_feature_db(*lamp_db(), (dir / "lamp.skfd").string());
  { std::ofstream(dir / "svc.conf") << "category.lamp.checkpoint = lamp.ckpt\ncategory.lamp.featuredb = lamp.skfd\n"; }
  const Service s(load_service_config((dir / "svc.conf").string()));
  EXPECT_EQ(s.handle("POST", "/v1/retrieve", lamp_request()).status, 200);
  fs::remove_all(dir);
}

TEST(Service, AnswersOverHttp) {
  ServiceConfig cfg;
  cfg.port = 20000 + static_cast<int>(::getpid() % 20000);
  cfg.categories = {{"lamp", "", ""}};
  Service s(cfg, {{"lamp", {lamp_model(), lamp_db()}}});
  std::thread t([&] { s.listen(); });
  s.wait_until_ready();
  httplib::Client client(cfg.host, cfg.port);
  auto cats = client.Get("/v1/categories");
  ASSERT_TRUE(cats);
  EXPECT_EQ(cats->status, 200);
  auto seg = client.Post("/v1/segment", lamp_request(), "application/json");
  ASSERT_TRUE(seg);
  EXPECT_EQ(seg->status, 200);
  EXPECT_EQ(without_timing(seg->body), without_timing(s.handle("POST", "/v1/segment", lamp_request()).body));
  auto index = client.Get("/");
  ASSERT_TRUE(index);
  EXPECT_EQ(index->status, 200);
  s.stop();
  t.join();
}
