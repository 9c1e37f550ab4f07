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

#include "sketchseg/pipeline.hpp"

#include <chrono>
#include <map>
#include <set>

#include "sketchseg/errors.hpp"

namespace sketchseg {

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

}  // namespace

int majority_label(const std::vector<int>& labels) {
  std::map<int, int> counts;
  for (int l : labels) ++counts[l];
  int best = 0, best_count = 0;
  for (const auto& [l, c] : counts)
    if (c > best_count) best = l, best_count = c;
  return best;
}

SegmentResult segment_sketch(const Sketch& sketch, const Model& model, const SegmentOptions& options) {
  if (sketch.empty()) throw InvalidArgument("sketch has no points");
  if (sketch.category != model.category)
    throw InvalidArgument("sketch category '" + sketch.category + "' does not match model '" + model.category + "'");
  const int side = model.spec.input_side;
  SegmentResult out;
  out.label_names = model.label_names;

  auto t0 = Clock::now();
  const Sketch norm = normalize_sketch(sketch, side);
  std::vector<RasterImage> images{rasterize(norm, side)};
  out.timing_ms.rasterize = ms_since(t0);

  t0 = Clock::now();
  auto maps = infer_batch(model, images);
  auto samples = sample_point_labels(norm, maps[0]);
  out.timing_ms.infer = ms_since(t0);

  t0 = Clock::now();
  ChainGraph graph = build_chain_graph(norm, samples, model.spec.k - 1);
  Labeling raw = queried_labeling(graph, options.params);
  Labeling final_labels = raw;
  if (options.refine) {
    final_labels = options.solver == Solver::Dp ? refine_dp(graph, options.params)
                                                : refine_alpha_expansion(graph, options.params).labeling;
  }
  out.timing_ms.refine = ms_since(t0);

  out.raw = split_by_chain(graph, raw.labels);
  out.labels = split_by_chain(graph, final_labels.labels);
  out.raw_energy = raw.energy;
  out.energy = final_labels.energy;
  for (const auto& s : out.labels) out.majority.push_back(majority_label(s));
  return out;
}

std::vector<PartQuery> part_queries(const Sketch& sketch, const std::vector<std::vector<int>>& labels,
                                    const Model& model) {
  if (labels.size() != sketch.strokes.size()) throw ShapeError("label strokes differ from the sketch");
  const int side = model.spec.input_side;
  const Sketch norm = normalize_sketch(sketch, side);
  std::set<int> present;
  for (std::size_t s = 0; s < labels.size(); ++s) {
    if (labels[s].size() != sketch.strokes[s].points.size()) throw ShapeError("label points differ from the sketch");
    present.insert(labels[s].begin(), labels[s].end());
  }
  std::vector<PartQuery> out;
  for (int label : present) {
    Sketch part;
    part.canvas_w = part.canvas_h = side;
    for (std::size_t s = 0; s < labels.size(); ++s) {
      Stroke run;
      for (std::size_t p = 0; p <= labels[s].size(); ++p) {
        if (p < labels[s].size() && labels[s][p] == label) {
          run.points.push_back(norm.strokes[s].points[p]);
        } else if (!run.points.empty()) {
          part.strokes.push_back(std::move(run));
          run = {};
        }
      }
    }
    out.push_back({label, extract_features(model, rasterize(part, side))});
  }
  return out;
}

}  // namespace sketchseg
