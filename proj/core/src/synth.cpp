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

#include "sketchseg/synth.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "sketchseg/errors.hpp"

namespace sketchseg {

namespace {

constexpr double kCanvas = 256.0;
constexpr double kResampleStep = 0.01;

StrokeTemplate poly(std::initializer_list<Point2> pts) { return {std::vector<Point2>(pts)}; }

StrokeTemplate arc(double cx, double cy, double rx, double ry, double a0, double a1, int steps) {
  StrokeTemplate t;
  for (int i = 0; i <= steps; ++i) {
    double a = a0 + (a1 - a0) * i / steps;
    t.control.push_back({cx + rx * std::cos(a), cy + ry * std::sin(a)});
  }
  return t;
}

std::vector<Point2> resample(const std::vector<Point2>& pts) {
  std::vector<Point2> out{pts.front()};
  for (std::size_t i = 1; i < pts.size(); ++i) {
    const Point2 a = pts[i - 1], b = pts[i];
    double len = std::hypot(b.x - a.x, b.y - a.y);
    int steps = std::max(1, static_cast<int>(std::ceil(len / kResampleStep)));
    for (int s = 1; s <= steps; ++s) {
      double t = static_cast<double>(s) / steps;
      out.push_back({a.x + (b.x - a.x) * t, a.y + (b.y - a.y) * t});
    }
  }
  return out;
}

}  // namespace

std::vector<std::string> SynthCategory::label_names() const {
  std::vector<std::string> names{"background"};
  for (const auto& p : parts) names.push_back(p.name);
  return names;
}

std::vector<std::string> synth_category_names() { return {"lamp", "table", "mug"}; }

SynthCategory synth_category(const std::string& name) {
  constexpr double pi = std::numbers::pi;
  SynthCategory c;
  c.name = name;
  if (name == "lamp") {
    c.parts = {
        {"base", {poly({{0.30, 0.92}, {0.70, 0.92}, {0.62, 0.84}, {0.38, 0.84}, {0.30, 0.92}})}, 0.03, 0.2},
        {"pole", {poly({{0.48, 0.84}, {0.48, 0.40}}), poly({{0.52, 0.84}, {0.52, 0.40}})}, 0.02, 0.15},
        {"shade",
         {poly({{0.30, 0.40}, {0.38, 0.10}, {0.62, 0.10}, {0.70, 0.40}}), poly({{0.30, 0.40}, {0.70, 0.40}})},
         0.03,
         0.2},
    };
  } else if (name == "table") {
    c.parts = {
        {"top", {poly({{0.10, 0.30}, {0.90, 0.30}, {0.90, 0.38}, {0.10, 0.38}, {0.10, 0.30}})}, 0.03, 0.15},
        {"legs",
         {poly({{0.15, 0.38}, {0.15, 0.90}}), poly({{0.85, 0.38}, {0.85, 0.90}}), poly({{0.25, 0.38}, {0.25, 0.82}}),
          poly({{0.75, 0.38}, {0.75, 0.82}})},
         0.02,
         0.15},
        {"stretcher", {poly({{0.15, 0.70}, {0.85, 0.70}})}, 0.04, 0.1},
    };
  } else if (name == "mug") {
    c.parts = {
        {"body",
         {poly({{0.25, 0.20}, {0.25, 0.85}, {0.65, 0.85}, {0.65, 0.20}}), arc(0.45, 0.20, 0.20, 0.05, 0.0, 2 * pi, 24)},
         0.02,
         0.15},
        {"handle", {arc(0.65, 0.52, 0.17, 0.17, -pi / 2, pi / 2, 16)}, 0.02, 0.2},
    };
  } else {
    throw InvalidArgument("unknown synthetic category '" + name + "'");
  }
  return c;
}

EdgeMapSample sample_from_sketch(const Sketch& sketch, int side) {
  if (!sketch.fully_labeled()) throw InvalidArgument("training sketches need per-point labels");
  RasterImage r = rasterize(normalize_sketch(sketch, side), side);
  EdgeMapSample s;
  s.side = side;
  s.image = std::move(r.values);
  s.labels = std::move(r.labels);
  return s;
}

std::vector<SynthItem> synth_sketch_dataset(const SynthCategory& category, int n, std::uint64_t seed, int side) {
  if (category.parts.size() < 2 || category.parts.size() > 4) throw InvalidArgument("synthetic categories need 2-4 parts");
  if (n < 0 || side < 8) throw InvalidArgument("bad synthetic dataset size");
  std::mt19937_64 rng(seed);
  auto uni = [&](double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng); };
  std::vector<SynthItem> out;
  out.reserve(n);
  for (int item = 0; item < n; ++item) {
    Sketch sk;
    sk.category = category.name;
    sk.canvas_w = sk.canvas_h = kCanvas;
    const double gs = uni(0.85, 1.15), aspect = uni(0.85, 1.15);
    std::vector<std::size_t> order(category.parts.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::shuffle(order.begin(), order.end(), rng);
    for (std::size_t pi : order) {
      const PartTemplate& part = category.parts[pi];
      double cx = 0.0, cy = 0.0;
      std::size_t count = 0;
      for (const auto& st : part.strokes)
        for (const auto& p : st.control) cx += p.x, cy += p.y, ++count;
      cx /= count;
      cy /= count;
      const double ox = uni(-part.shift, part.shift), oy = uni(-part.shift, part.shift);
      const double sx = 1.0 + uni(-part.scale, part.scale), sy = 1.0 + uni(-part.scale, part.scale);
      for (const auto& st : part.strokes) {
        auto pts = resample(st.control);
        if (uni(0.0, 1.0) < 0.5) std::reverse(pts.begin(), pts.end());
        const double f1 = uni(8.0, 16.0), f2 = uni(8.0, 16.0), p1 = uni(0.0, 6.3), p2 = uni(0.0, 6.3);
        Stroke stroke;
        for (std::size_t i = 0; i < pts.size(); ++i) {
          double t = static_cast<double>(i) * kResampleStep;
          double u = cx + (pts[i].x - cx) * sx + ox + category.wobble * std::sin(f1 * t + p1);
          double v = cy + (pts[i].y - cy) * sy + oy + category.wobble * std::sin(f2 * t + p2);
          u = 0.5 + (u - 0.5) * gs * aspect;
          v = 0.5 + (v - 0.5) * gs / aspect;
          stroke.points.push_back({std::clamp(u * kCanvas, 0.0, kCanvas), std::clamp(v * kCanvas, 0.0, kCanvas)});
          stroke.gt_labels.push_back(static_cast<int>(pi) + 1);
        }
        sk.strokes.push_back(std::move(stroke));
      }
    }
    SynthItem it{std::move(sk), {}};
    it.sample = sample_from_sketch(it.sketch, side);
    it.sample.provenance.source = "synth:" + category.name + ":" + std::to_string(item);
    out.push_back(std::move(it));
  }
  return out;
}

}  // namespace sketchseg
