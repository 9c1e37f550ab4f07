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

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "sketchseg/network.hpp"
#include "sketchseg/refine.hpp"
#include "sketchseg/sketch.hpp"

namespace sketchseg {

inline constexpr double kComponentThreshold = 0.75;
inline constexpr int kMetricSide = 256;

/// Correct and total raster pixels of one stroke drawn alone in the sketch's normalized frame.
struct StrokeTally {
  int correct = 0;
  int total = 0;
};

/// Per-stroke tallies; every pixel takes the predicted and ground-truth labels
/// of its generating point. `pred` must be congruent with the sketch.
std::vector<StrokeTally> stroke_tallies(const std::vector<std::vector<int>>& pred, const Sketch& sketch,
                                        int side = kMetricSide);

/// Percentage of stroke pixels whose prediction matches the ground truth.
double pixel_metric(const std::vector<std::vector<int>>& pred, const Sketch& sketch, int side = kMetricSide);

/// Percentage of strokes whose correct-pixel fraction is at least `threshold` (inclusive).
double component_metric(const std::vector<std::vector<int>>& pred, const Sketch& sketch,
                        double threshold = kComponentThreshold, int side = kMetricSide);

struct StageTimes {
  double rasterize = 0.0;
  double infer = 0.0;
  double refine = 0.0;

  double total() const noexcept { return rasterize + infer + refine; }
};

struct SketchScore {
  double pixel = 0.0;
  double component = 0.0;
  double energy = 0.0;
};

/// One evaluated configuration, e.g. "Ours-4" or "Ours-NoGC-4".
struct VariantReport {
  std::string variant;
  int batch = 1;
  bool refined = false;
  std::vector<SketchScore> per_sketch;  // aligned with the input sketches
  double pixel = 0.0;                   // mean over sketches
  double component = 0.0;
  double energy = 0.0;                  // summed over sketches
  StageTimes mean_ms;                   // per sketch
};

struct MetricReport {
  std::string category;
  std::vector<VariantReport> variants;

  const VariantReport* find(const std::string& variant) const;
};

struct EvalConfig {
  EnergyParams params;
  std::vector<int> batch_sizes{1, 2, 4, 6, 8, 10};
  bool refine = true;  // adds the refined variants next to the raw ones
  std::uint64_t seed = 0;
  double threshold = kComponentThreshold;
};

/// Each batch size partitions the sketches by a seeded permutation; the last
/// batch is padded with already-tested sketches whose results are discarded.
MetricReport evaluate_dataset(const Model& model, std::span<const Sketch> sketches, const EvalConfig& config);

/// Header `variant,category,pixel_metric,component_metric,mean_ms,n_sketches`, then one row per variant.
std::string to_csv(const MetricReport& report);

}  // namespace sketchseg
