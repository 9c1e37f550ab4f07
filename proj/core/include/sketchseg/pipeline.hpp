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

#include <string>
#include <vector>

#include "sketchseg/metrics.hpp"
#include "sketchseg/network.hpp"
#include "sketchseg/refine.hpp"
#include "sketchseg/sketch.hpp"

namespace sketchseg {

enum class Solver { Dp, AlphaExpansion };

struct SegmentOptions {
  EnergyParams params;
  bool refine = true;
  Solver solver = Solver::Dp;
};

struct SegmentResult {
  std::vector<std::vector<int>> labels;  // per stroke, per point; refined when refinement is on
  std::vector<int> majority;             // most frequent label per stroke, ties to the lowest
  std::vector<std::vector<int>> raw;     // network labels before refinement
  std::vector<std::string> label_names;
  StageTimes timing_ms;
  double raw_energy = 0.0;
  double energy = 0.0;
};

/// Normalize, rasterize, infer as a batch of one, sample point labels and refine.
SegmentResult segment_sketch(const Sketch& sketch, const Model& model, const SegmentOptions& options = {});

/// Most frequent value; ties go to the lowest. Empty input gives 0.
int majority_label(const std::vector<int>& labels);

struct PartQuery {
  int label = 0;
  std::vector<float> feature;
};

/// One encoder feature per predicted part: the points carrying that label,
/// drawn in the whole sketch's normalized frame. Ascending label order.
std::vector<PartQuery> part_queries(const Sketch& sketch, const std::vector<std::vector<int>>& labels,
                                    const Model& model);

}  // namespace sketchseg
