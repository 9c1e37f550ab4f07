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

#include "sketchseg/sketch_json.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "sketchseg/errors.hpp"

namespace sketchseg {

using nlohmann::json;

namespace {

double number_at(const json& j, const std::string& path) {
  if (!j.is_number()) throw ParseError(path, "expected a number");
  const double v = j.get<double>();
  if (!std::isfinite(v)) throw ParseError(path, "value must be finite");
  return v;
}

}  // namespace

Sketch parse_sketch(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    throw ParseError("", std::string("malformed JSON: ") + e.what());
  }
  if (!doc.is_object()) throw ParseError("", "document must be a JSON object");

  auto it = doc.find("version");
  if (it == doc.end()) throw ParseError("version", "missing field");
  if (!it->is_number_integer() || it->get<long long>() != 1) throw ParseError("version", "unsupported version (expected 1)");

  Sketch sk;
  it = doc.find("category");
  if (it == doc.end()) throw ParseError("category", "missing field");
  if (!it->is_string()) throw ParseError("category", "expected a string");
  sk.category = it->get<std::string>();

  it = doc.find("canvas");
  if (it == doc.end()) throw ParseError("canvas", "missing field");
  if (!it->is_array() || it->size() != 2) throw ParseError("canvas", "expected [w, h]");
  sk.canvas_w = number_at((*it)[0], "canvas[0]");
  sk.canvas_h = number_at((*it)[1], "canvas[1]");
  if (sk.canvas_w <= 0 || sk.canvas_h <= 0) throw ParseError("canvas", "dimensions must be positive");

  it = doc.find("strokes");
  if (it == doc.end()) throw ParseError("strokes", "missing field");
  if (!it->is_array()) throw ParseError("strokes", "expected an array");

  const auto& strokes = *it;
  sk.strokes.reserve(strokes.size());
  for (std::size_t si = 0; si < strokes.size(); ++si) {
    const std::string base = "strokes[" + std::to_string(si) + "]";
    const auto& js = strokes[si];
    if (!js.is_object()) throw ParseError(base, "expected an object");
    auto pit = js.find("points");
    if (pit == js.end()) throw ParseError(base + ".points", "missing field");
    if (!pit->is_array()) throw ParseError(base + ".points", "expected an array");

    Stroke st;
    st.points.reserve(pit->size());
    for (std::size_t pi = 0; pi < pit->size(); ++pi) {
      const std::string pp = base + ".points[" + std::to_string(pi) + "]";
      const auto& jp = (*pit)[pi];
      if (!jp.is_array() || jp.size() != 2) throw ParseError(pp, "expected [x, y]");
      Point2 p{number_at(jp[0], pp + "[0]"), number_at(jp[1], pp + "[1]")};
      p.x = std::clamp(p.x, 0.0, sk.canvas_w);
      p.y = std::clamp(p.y, 0.0, sk.canvas_h);
      st.points.push_back(p);
    }

    auto lit = js.find("labels");
    if (lit != js.end() && !lit->is_null()) {
      const std::string lp = base + ".labels";
      if (!lit->is_array()) throw ParseError(lp, "expected an array");
      if (lit->size() != st.points.size())
        throw ParseError(lp, "length " + std::to_string(lit->size()) + " does not match " +
                                 std::to_string(st.points.size()) + " points");
      st.gt_labels.reserve(lit->size());
      for (std::size_t li = 0; li < lit->size(); ++li) {
        const auto& jl = (*lit)[li];
        const std::string ep = lp + "[" + std::to_string(li) + "]";
        if (!jl.is_number_integer()) throw ParseError(ep, "expected an integer");
        const auto v = jl.get<long long>();
        if (v < 1 || v > 255) throw ParseError(ep, "label index out of range [1, 255]");
        st.gt_labels.push_back(static_cast<int>(v));
      }
    }
    sk.strokes.push_back(std::move(st));
  }
  return sk;
}

std::string serialize_sketch(const Sketch& sketch) {
  json doc;
  doc["version"] = 1;
  doc["category"] = sketch.category;
  doc["canvas"] = json::array({sketch.canvas_w, sketch.canvas_h});
  json strokes = json::array();
  for (const auto& s : sketch.strokes) {
    json js;
    json pts = json::array();
    for (const auto& p : s.points) pts.push_back(json::array({p.x, p.y}));
    js["points"] = std::move(pts);
    if (s.has_labels()) js["labels"] = s.gt_labels;
    strokes.push_back(std::move(js));
  }
  doc["strokes"] = std::move(strokes);
  return doc.dump();
}

Sketch load_sketch(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open sketch file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_sketch(ss.str());
}

void save_sketch(const Sketch& sketch, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write sketch file: " + path);
  out << serialize_sketch(sketch) << '\n';
}

}  // namespace sketchseg
