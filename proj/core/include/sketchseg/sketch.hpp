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
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace sketchseg {

struct Point2 {
  double x = 0.0;
  double y = 0.0;

  friend bool operator==(const Point2&, const Point2&) = default;
};

struct Stroke {
  std::vector<Point2> points;
  /// Part label per point, each in [1, k). Empty when the stroke is unlabeled.
  std::vector<int> gt_labels;

  bool has_labels() const noexcept { return !gt_labels.empty(); }
  friend bool operator==(const Stroke&, const Stroke&) = default;
};

struct Sketch {
  std::string category;
  double canvas_w = 256.0;
  double canvas_h = 256.0;
  std::vector<Stroke> strokes;

  std::size_t point_count() const noexcept;
  bool empty() const noexcept { return point_count() == 0; }
  /// True when every stroke carries per-point ground-truth labels.
  bool fully_labeled() const noexcept;
  friend bool operator==(const Sketch&, const Sketch&) = default;
};

/// Part label names of one category. Index 0 is the background.
class LabelSet {
 public:
  LabelSet(std::string category, std::vector<std::string> names);

  const std::string& category() const noexcept { return category_; }
  const std::vector<std::string>& names() const noexcept { return names_; }
  int k() const noexcept { return static_cast<int>(names_.size()); }
  /// Index of `name`, or -1.
  int index_of(const std::string& name) const noexcept;

 private:
  std::string category_;
  std::vector<std::string> names_;
};

/// Identifies the stroke point that generated a raster pixel.
struct PointRef {
  int stroke = -1;
  int point = -1;

  bool valid() const noexcept { return stroke >= 0; }
  friend bool operator==(const PointRef&, const PointRef&) = default;
};

struct RasterImage {
  int width = 0;
  int height = 0;
  std::vector<std::uint8_t> values;  // 0/1, row-major
  std::vector<PointRef> point_map;   // generating point per pixel; invalid where empty
  /// Per-pixel ground-truth label (0 = background). Empty unless the sketch carries labels.
  std::vector<int> labels;

  RasterImage() = default;
  RasterImage(int w, int h);

  std::size_t index(int x, int y) const noexcept {
    return static_cast<std::size_t>(y) * static_cast<std::size_t>(width) + static_cast<std::size_t>(x);
  }
  std::size_t occupied() const noexcept;
};

/// Uniform scale + translation fitting the bounding box, centered, into the
/// inner 90% of a side x side canvas. A zero-extent sketch is centered with scale 1.
Sketch normalize_sketch(const Sketch& sketch, double side);

/// Draws each consecutive point pair as a one-pixel discrete line. Pixels
/// already set by an earlier segment keep their first generating point.
RasterImage rasterize(const Sketch& sketch, int side);

/// Integer pixel positions of a discrete line from a to b, endpoints included.
std::vector<std::pair<int, int>> discrete_line(int x0, int y0, int x1, int y1);

/// Raster pixel nearest to a continuous canvas position, clamped into [0, side).
std::pair<int, int> pixel_of(const Point2& p, int side) noexcept;

/// Dense k x side x side score volume (channel-major). Index 0 is the background.
struct SegMap {
  int k = 0;
  int side = 0;
  std::vector<float> scores;

  SegMap() = default;
  SegMap(int k_, int side_) : k(k_), side(side_), scores(static_cast<std::size_t>(k_) * side_ * side_, 0.0f) {}

  float& at(int c, int y, int x) noexcept { return scores[(static_cast<std::size_t>(c) * side + y) * side + x]; }
  float at(int c, int y, int x) const noexcept { return scores[(static_cast<std::size_t>(c) * side + y) * side + x]; }
  /// Argmax over channels 1..k-1 at a pixel; ties go to the lowest index.
  int foreground_argmax(int y, int x) const noexcept;
};

struct StrokeSamples {
  std::vector<int> labels;   // one part label per point, never 0
  std::vector<float> scores; // points x k, row-major
};

/// Queries the segmentation map at the rounded pixel of every stroke point.
std::vector<StrokeSamples> sample_point_labels(const Sketch& sketch, const SegMap& segmap);

}  // namespace sketchseg
