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

#include "sketchseg/metrics.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <numeric>
#include <random>

#include "sketchseg/errors.hpp"

namespace sketchseg {

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

void check_congruent(const std::vector<std::vector<int>>& pred, const Sketch& sketch) {
  if (!sketch.fully_labeled()) throw InvalidArgument("sketch is missing ground-truth labels");
  if (pred.size() != sketch.strokes.size()) throw ShapeError("prediction stroke count differs from the sketch");
  for (std::size_t s = 0; s < pred.size(); ++s)
    if (pred[s].size() != sketch.strokes[s].points.size())
      throw ShapeError("prediction point count differs in stroke " + std::to_string(s));
}

}  // namespace

std::vector<StrokeTally> stroke_tallies(const std::vector<std::vector<int>>& pred, const Sketch& sketch, int side) {
  check_congruent(pred, sketch);
  const Sketch norm = normalize_sketch(sketch, side);
  std::vector<StrokeTally> out(sketch.strokes.size());
  for (std::size_t s = 0; s < sketch.strokes.size(); ++s) {
    Sketch one;
    one.canvas_w = one.canvas_h = side;
    one.strokes.push_back(norm.strokes[s]);
    RasterImage r = rasterize(one, side);
    for (const PointRef& ref : r.point_map) {
      if (!ref.valid()) continue;
      ++out[s].total;
      if (pred[s][ref.point] == sketch.strokes[s].gt_labels[ref.point]) ++out[s].correct;
    }
  }
  return out;
}

double pixel_metric(const std::vector<std::vector<int>>& pred, const Sketch& sketch, int side) {
  long long correct = 0, total = 0;
  for (const auto& t : stroke_tallies(pred, sketch, side)) correct += t.correct, total += t.total;
  if (total == 0) throw InvalidArgument("sketch has no stroke pixels");
  return 100.0 * static_cast<double>(correct) / static_cast<double>(total);
}

double component_metric(const std::vector<std::vector<int>>& pred, const Sketch& sketch, double threshold,
                        int side) {
  int good = 0, strokes = 0;
  for (const auto& t : stroke_tallies(pred, sketch, side)) {
    if (t.total == 0) continue;
    ++strokes;
    if (t.correct >= threshold * t.total) ++good;
  }
  if (strokes == 0) throw InvalidArgument("sketch has no stroke pixels");
  return 100.0 * good / strokes;
}

const VariantReport* MetricReport::find(const std::string& variant) const {
  for (const auto& v : variants)
    if (v.variant == variant) return &v;
  return nullptr;
}

MetricReport evaluate_dataset(const Model& model, std::span<const Sketch> sketches, const EvalConfig& config) {
  if (sketches.empty()) throw InvalidArgument("nothing to evaluate");
  for (const auto& s : sketches) {
    if (s.category != model.category)
      throw InvalidArgument("sketch category '" + s.category + "' does not match model '" + model.category + "'");
    if (!s.fully_labeled()) throw InvalidArgument("evaluation sketches need ground-truth labels");
    if (s.empty()) throw InvalidArgument("evaluation sketches must not be empty");
  }
  const int side = model.spec.input_side;
  const int labels = model.spec.k - 1;
  const std::size_t n = sketches.size();

  MetricReport report;
  report.category = model.category;
  for (int x : config.batch_sizes) {
    if (x < 1) throw InvalidArgument("batch sizes must be positive");
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::mt19937_64 rng(config.seed);
    std::shuffle(order.begin(), order.end(), rng);

    VariantReport raw{"Ours-NoGC-" + std::to_string(x), x, false, std::vector<SketchScore>(n), 0, 0, 0, {}};
    VariantReport ref{"Ours-" + std::to_string(x), x, true, std::vector<SketchScore>(n), 0, 0, 0, {}};
    StageTimes raw_t, ref_t;
    for (std::size_t start = 0; start < n; start += x) {
      std::vector<std::size_t> batch;
      for (int i = 0; i < x; ++i) {
        std::size_t pos = start + i;
        batch.push_back(order[pos < n ? pos : (pos - n) % n]);
      }
      const std::size_t real = std::min<std::size_t>(x, n - start);

      auto t0 = Clock::now();
      std::vector<Sketch> norm;
      std::vector<RasterImage> images;
      for (std::size_t idx : batch) {
        norm.push_back(normalize_sketch(sketches[idx], side));
        images.push_back(rasterize(norm.back(), side));
      }
      const double t_rast = ms_since(t0) / x;
      t0 = Clock::now();
      auto maps = infer_batch(model, images);
      const double t_infer = ms_since(t0) / x;

      for (std::size_t b = 0; b < real; ++b) {
        const std::size_t idx = batch[b];
        const Sketch& sk = sketches[idx];
        t0 = Clock::now();
        auto samples = sample_point_labels(norm[b], maps[b]);
        ChainGraph graph = build_chain_graph(norm[b], samples, labels);
        Labeling q = queried_labeling(graph, config.params);
        const double t_sample = ms_since(t0);
        auto q_labels = split_by_chain(graph, q.labels);
        raw.per_sketch[idx] = {pixel_metric(q_labels, sk), component_metric(q_labels, sk, config.threshold), q.energy};
        raw_t.rasterize += t_rast;
        raw_t.infer += t_infer + t_sample;
        if (!config.refine) continue;
        t0 = Clock::now();
        Labeling r = refine_dp(graph, config.params);
        const double t_refine = ms_since(t0);
        auto r_labels = split_by_chain(graph, r.labels);
        ref.per_sketch[idx] = {pixel_metric(r_labels, sk), component_metric(r_labels, sk, config.threshold), r.energy};
        ref_t.rasterize += t_rast;
        ref_t.infer += t_infer + t_sample;
        ref_t.refine += t_refine;
      }
    }
    auto finish = [&](VariantReport& v, const StageTimes& t) {
      for (const auto& s : v.per_sketch) {
        v.pixel += s.pixel / n;
        v.component += s.component / n;
        v.energy += s.energy;
      }
      v.mean_ms = {t.rasterize / n, t.infer / n, t.refine / n};
      report.variants.push_back(std::move(v));
    };
    finish(raw, raw_t);
    if (config.refine) finish(ref, ref_t);
  }
  return report;
}

std::string to_csv(const MetricReport& report) {
  std::string out = "variant,category,pixel_metric,component_metric,mean_ms,n_sketches\n";
  char buf[256];
  for (const auto& v : report.variants) {
    std::snprintf(buf, sizeof buf, "%s,%s,%.2f,%.2f,%.3f,%zu\n", v.variant.c_str(), report.category.c_str(), v.pixel,
                  v.component, v.mean_ms.total(), v.per_sketch.size());
    out += buf;
  }
  return out;
}

}  // namespace sketchseg
