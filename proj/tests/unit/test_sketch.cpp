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

#include <algorithm>
#include <random>
#include <set>

#include "sketchseg/errors.hpp"
#include "sketchseg/sketch.hpp"

using namespace sketchseg;

namespace {

Sketch random_sketch(std::mt19937_64& rng, int strokes, int max_points, bool labeled, int k = 4) {
  std::uniform_real_distribution<double> u(0.0, 300.0);
  std::uniform_int_distribution<int> npts(1, max_points), lab(1, k - 1);
  Sketch s;
  s.category = "toy";
  s.canvas_w = s.canvas_h = 300.0;
  for (int i = 0; i < strokes; ++i) {
    Stroke st;
    const int n = npts(rng);
    for (int p = 0; p < n; ++p) {
      st.points.push_back({u(rng), u(rng)});
      if (labeled) st.gt_labels.push_back(lab(rng));
    }
    s.strokes.push_back(std::move(st));
  }
  return s;
}

}  // namespace

TEST(LabelSet, RejectsFewerThanTwoLabels) {
  EXPECT_THROW(LabelSet("chair", {"background"}), InvalidArgument);
}

TEST(LabelSet, RejectsDuplicateNames) {
  EXPECT_THROW(LabelSet("chair", {"background", "seat", "seat"}), InvalidArgument);
}

TEST(LabelSet, IndexOfFindsNames) {
  LabelSet ls("chair", {"background", "seat", "back"});
  EXPECT_EQ(ls.k(), 3);
  EXPECT_EQ(ls.index_of("back"), 2);
  EXPECT_EQ(ls.index_of("legs"), -1);
}

TEST(Normalize, FitsBoundingBoxIntoInnerNinetyPercent) {
  Sketch s;
  s.strokes.push_back({{{10, 20}, {110, 70}}, {}});
  Sketch n = normalize_sketch(s, 256);
  // width 100 dominates: scale 0.9 * 256 / 100, centered.
  const double scale = 0.9 * 256 / 100.0;
  EXPECT_NEAR(n.strokes[0].points[0].x, 128 - 50 * scale, 1e-9);
  EXPECT_NEAR(n.strokes[0].points[1].x, 128 + 50 * scale, 1e-9);
  EXPECT_NEAR(n.strokes[0].points[0].y, 128 - 25 * scale, 1e-9);
  EXPECT_NEAR(n.strokes[0].points[1].y, 128 + 25 * scale, 1e-9);
  EXPECT_DOUBLE_EQ(n.canvas_w, 256);
}

TEST(Normalize, SinglePointLandsAtCenter) {
  Sketch s;
  s.strokes.push_back({{{3, 4}}, {}});
  Sketch n = normalize_sketch(s, 64);
  EXPECT_DOUBLE_EQ(n.strokes[0].points[0].x, 32);
  EXPECT_DOUBLE_EQ(n.strokes[0].points[0].y, 32);
}

TEST(Normalize, IsIdempotent) {
  std::mt19937_64 rng(7);
  for (int t = 0; t < 50; ++t) {
    Sketch s = random_sketch(rng, 4, 10, false);
    Sketch a = normalize_sketch(s, 256);
    Sketch b = normalize_sketch(a, 256);
    for (std::size_t i = 0; i < a.strokes.size(); ++i)
      for (std::size_t p = 0; p < a.strokes[i].points.size(); ++p) {
        EXPECT_NEAR(a.strokes[i].points[p].x, b.strokes[i].points[p].x, 1e-9);
        EXPECT_NEAR(a.strokes[i].points[p].y, b.strokes[i].points[p].y, 1e-9);
      }
  }
}

TEST(DiscreteLine, IncludesEndpointsAndIsEightConnected) {
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<int> u(-20, 20);
  for (int t = 0; t < 200; ++t) {
    const int x0 = u(rng), y0 = u(rng), x1 = u(rng), y1 = u(rng);
    auto line = discrete_line(x0, y0, x1, y1);
    ASSERT_FALSE(line.empty());
    EXPECT_EQ(line.front(), std::make_pair(x0, y0));
    EXPECT_EQ(line.back(), std::make_pair(x1, y1));
    EXPECT_EQ(static_cast<int>(line.size()), std::max(std::abs(x1 - x0), std::abs(y1 - y0)) + 1);
    for (std::size_t i = 1; i < line.size(); ++i) {
      EXPECT_LE(std::abs(line[i].first - line[i - 1].first), 1);
      EXPECT_LE(std::abs(line[i].second - line[i - 1].second), 1);
    }
  }
}

TEST(Rasterize, HorizontalSegmentCoversItsPixels) {
  Sketch s;
  s.strokes.push_back({{{2, 5}, {9, 5}}, {1, 2}});
  RasterImage r = rasterize(s, 16);
  EXPECT_EQ(r.occupied(), 8u);
  for (int x = 2; x <= 9; ++x) {
    ASSERT_EQ(r.values[r.index(x, 5)], 1);
    const PointRef ref = r.point_map[r.index(x, 5)];
    EXPECT_EQ(ref.stroke, 0);
    EXPECT_EQ(ref.point, x <= 5 ? 0 : 1);  // nearer endpoint, ties to the first
    EXPECT_EQ(r.labels[r.index(x, 5)], x <= 5 ? 1 : 2);
  }
}

TEST(Rasterize, FirstWriterKeepsSharedPixels) {
  Sketch s;
  s.strokes.push_back({{{0, 3}, {6, 3}}, {1, 1}});
  s.strokes.push_back({{{3, 0}, {3, 6}}, {2, 2}});
  RasterImage r = rasterize(s, 8);
  EXPECT_EQ(r.point_map[r.index(3, 3)].stroke, 0);
  EXPECT_EQ(r.labels[r.index(3, 3)], 1);
}

TEST(Rasterize, LabelsEmptyForUnlabeledSketch) {
  Sketch s;
  s.strokes.push_back({{{0, 0}, {3, 3}}, {}});
  EXPECT_TRUE(rasterize(s, 8).labels.empty());
}

TEST(Rasterize, OccupiedPixelsAlwaysHaveAGeneratingPoint) {
  std::mt19937_64 rng(11);
  for (int t = 0; t < 30; ++t) {
    Sketch s = normalize_sketch(random_sketch(rng, 5, 8, true), 64);
    RasterImage r = rasterize(s, 64);
    for (std::size_t i = 0; i < r.values.size(); ++i) {
      EXPECT_EQ(r.values[i] == 1, r.point_map[i].valid());
      EXPECT_EQ(r.values[i] == 1, r.labels[i] > 0);
    }
  }
}

TEST(SegMap, ForegroundArgmaxIgnoresBackgroundAndPrefersLowestOnTies) {
  SegMap m(4, 2);
  m.at(0, 0, 0) = 10.0f;
  m.at(2, 0, 0) = 1.0f;
  m.at(3, 0, 0) = 1.0f;
  EXPECT_EQ(m.foreground_argmax(0, 0), 2);
  EXPECT_EQ(m.foreground_argmax(1, 1), 1);
}

TEST(SamplePointLabels, ReadsTheRoundedPixel) {
  Sketch s;
  s.strokes.push_back({{{1.4, 1.6}, {2.6, 0.2}}, {}});
  SegMap m(3, 4);
  m.at(2, 2, 1) = 5.0f;  // (x=1, y=2)
  m.at(1, 0, 3) = 5.0f;  // (x=3, y=0)
  auto samples = sample_point_labels(s, m);
  ASSERT_EQ(samples.size(), 1u);
  EXPECT_EQ(samples[0].labels, (std::vector<int>{2, 1}));
  EXPECT_EQ(samples[0].scores.size(), 6u);
  EXPECT_FLOAT_EQ(samples[0].scores[2], 5.0f);
}

TEST(SamplePointLabels, NeverReturnsBackground) {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<float> u(-1, 1);
  SegMap m(5, 32);
  for (auto& v : m.scores) v = u(rng);
  for (int y = 0; y < 32; ++y)
    for (int x = 0; x < 32; ++x) m.at(0, y, x) = 100.0f;
  Sketch s = normalize_sketch(random_sketch(rng, 6, 12, false), 32);
  for (const auto& st : sample_point_labels(s, m))
    for (int l : st.labels) {
      EXPECT_GE(l, 1);
      EXPECT_LT(l, 5);
    }
}
