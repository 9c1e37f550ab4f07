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
#include <string>
#include <vector>

#include "sketchseg/sample.hpp"
#include "sketchseg/sketch.hpp"

namespace sketchseg {

/// Polyline in a unit frame (x right, y down).
struct StrokeTemplate {
  std::vector<Point2> control;
};

struct PartTemplate {
  std::string name;
  std::vector<StrokeTemplate> strokes;
  double shift = 0.03;  // uniform jitter of the part position, unit-frame units
  double scale = 0.15;  // relative jitter of the part size per axis
};

/// Procedural 2D category with 2-4 parts; part i carries label i + 1.
struct SynthCategory {
  std::string name;
  std::vector<PartTemplate> parts;
  double wobble = 0.006;  // smooth per-point noise amplitude, unit-frame units

  std::vector<std::string> label_names() const;
};

/// Built-in categories: "lamp" (base, pole, shade), "table" (top, legs, stretcher), "mug" (body, handle).
SynthCategory synth_category(const std::string& name);
std::vector<std::string> synth_category_names();

struct SynthItem {
  Sketch sketch;         // labeled, on a 256 x 256 canvas
  EdgeMapSample sample;  // the sketch normalized and rasterized at `side`
};

/// `n` random instances, deterministic in `seed`.
std::vector<SynthItem> synth_sketch_dataset(const SynthCategory& category, int n, std::uint64_t seed, int side);

/// Normalizes and rasterizes a labeled sketch into a training sample.
EdgeMapSample sample_from_sketch(const Sketch& sketch, int side);

}  // namespace sketchseg
