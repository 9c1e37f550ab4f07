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

#include "sketchseg/sketch.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <set>

#include "sketchseg/errors.hpp"

namespace sketchseg {

std::size_t Sketch::point_count() const noexcept {
  std::size_t n = 0;
  for (const auto& s : strokes) n += s.points.size();
  return n;
}

bool Sketch::fully_labeled() const noexcept {
  if (strokes.empty()) return false;
  return std::all_of(strokes.begin(), strokes.end(), [](const Stroke& s) {
    return s.gt_labels.size() == s.points.size();
  });
}

LabelSet::LabelSet(std::string category, std::vector<std::string> names)
    : category_(std::move(category)), names_(std::move(names)) {
  if (names_.size() < 2) throw InvalidArgument("label set needs at least 2 labels (background + one part)");
  std::set<std::string> seen(names_.begin(), names_.end());
  if (seen.size() != names_.size()) throw InvalidArgument("label names must be unique");
}

int LabelSet::index_of(const std::string& name) const noexcept {
  auto it = std::find(names_.begin(), names_.end(), name);
  return it == names_.end() ? -1 : static_cast<int>(it - names_.begin());
}

RasterImage::RasterImage(int w, int h)
    : width(w), height(h),
      values(static_cast<std::size_t>(w) * h, 0),
      point_map(static_cast<std::size_t>(w) * h) {}

std::size_t RasterImage::occupied() const noexcept {
  return static_cast<std::size_t>(std::count(values.begin(), values.end(), std::uint8_t{1}));
}

Sketch normalize_sketch(const Sketch& sketch, double side) {
  if (sketch.empty()) throw InvalidArgument("cannot normalize an empty sketch");
  if (side < 16.0) throw InvalidArgument("normalization side must be at least 16 pixels");

  double min_x = std::numeric_limits<double>::infinity(), min_y = min_x;
  double max_x = -min_x, max_y = -min_x;
  for (const auto& s : sketch.strokes) {
    for (const auto& p : s.points) {
      min_x = std::min(min_x, p.x);
      max_x = std::max(max_x, p.x);
      min_y = std::min(min_y, p.y);
      max_y = std::max(max_y, p.y);
    }
  }
  const double extent = std::max(max_x - min_x, max_y - min_y);
  const double scale = extent > 0.0 ? 0.9 * side / extent : 1.0;
  const double cx = 0.5 * (min_x + max_x);
  const double cy = 0.5 * (min_y + max_y);
  const double half = 0.5 * side;

  Sketch out = sketch;
  out.canvas_w = side;
  out.canvas_h = side;
  for (auto& s : out.strokes) {
    for (auto& p : s.points) {
      p.x = half + (p.x - cx) * scale;
      p.y = half + (p.y - cy) * scale;
    }
  }
  return out;
}

std::vector<std::pair<int, int>> discrete_line(int x0, int y0, int x1, int y1) {
  std::vector<std::pair<int, int>> pixels;
  const int dx = std::abs(x1 - x0), sx = x0 < x1 ? 1 : -1;
  const int dy = -std::abs(y1 - y0), sy = y0 < y1 ? 1 : -1;
  pixels.reserve(static_cast<std::size_t>(std::max(dx, -dy)) + 1);
  int err = dx + dy;
  for (;;) {
    pixels.emplace_back(x0, y0);
    if (x0 == x1 && y0 == y1) break;
    const int e2 = 2 * err;
    if (e2 >= dy) {
      err += dy;
      x0 += sx;
    }
    if (e2 <= dx) {
      err += dx;
      y0 += sy;
    }
  }
  return pixels;
}

std::pair<int, int> pixel_of(const Point2& p, int side) noexcept {
  auto clamp = [side](double v) {
    const double r = std::floor(v + 0.5);
    if (!(r >= 0.0)) return 0;
    if (r > side - 1) return side - 1;
    return static_cast<int>(r);
  };
  return {clamp(p.x), clamp(p.y)};
}

RasterImage rasterize(const Sketch& sketch, int side) {
  RasterImage img(side, side);
  const bool labeled = sketch.fully_labeled();
  if (labeled) img.labels.assign(img.values.size(), 0);

  auto mark = [&](int x, int y, int stroke, int point) {
    const auto idx = img.index(x, y);
    if (img.values[idx]) return;
    img.values[idx] = 1;
    img.point_map[idx] = {stroke, point};
    if (labeled) img.labels[idx] = sketch.strokes[stroke].gt_labels[point];
  };

  for (int si = 0; si < static_cast<int>(sketch.strokes.size()); ++si) {
    const auto& pts = sketch.strokes[si].points;
    if (pts.empty()) continue;
    if (pts.size() == 1) {
      auto [x, y] = pixel_of(pts[0], side);
      mark(x, y, si, 0);
      continue;
    }
    for (int pi = 0; pi + 1 < static_cast<int>(pts.size()); ++pi) {
      auto [ax, ay] = pixel_of(pts[pi], side);
      auto [bx, by] = pixel_of(pts[pi + 1], side);
      for (auto [x, y] : discrete_line(ax, ay, bx, by)) {
        const long da = static_cast<long>(x - ax) * (x - ax) + static_cast<long>(y - ay) * (y - ay);
        const long db = static_cast<long>(x - bx) * (x - bx) + static_cast<long>(y - by) * (y - by);
        mark(x, y, si, da <= db ? pi : pi + 1);
      }
    }
  }
  return img;
}

int SegMap::foreground_argmax(int y, int x) const noexcept {
  int best = 1;
  float best_v = at(1, y, x);
  for (int c = 2; c < k; ++c) {
    const float v = at(c, y, x);
    if (v > best_v) {
      best_v = v;
      best = c;
    }
  }
  return best;
}

std::vector<StrokeSamples> sample_point_labels(const Sketch& sketch, const SegMap& segmap) {
  if (segmap.k < 2) throw InvalidArgument("segmentation map needs k >= 2");
  std::vector<StrokeSamples> out(sketch.strokes.size());
  for (std::size_t si = 0; si < sketch.strokes.size(); ++si) {
    const auto& pts = sketch.strokes[si].points;
    auto& dst = out[si];
    dst.labels.reserve(pts.size());
    dst.scores.reserve(pts.size() * static_cast<std::size_t>(segmap.k));
    for (const auto& p : pts) {
      auto [x, y] = pixel_of(p, segmap.side);
      dst.labels.push_back(segmap.foreground_argmax(y, x));
      for (int c = 0; c < segmap.k; ++c) dst.scores.push_back(segmap.at(c, y, x));
    }
  }
  return out;
}

}  // namespace sketchseg
