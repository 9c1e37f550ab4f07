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

#include <random>

#include "oracles.hpp"
#include "sketchseg/canny.hpp"

using namespace sketchseg;

namespace {

// Piecewise-constant multi-channel image built from random rectangles.
std::vector<float> rectangles(std::mt19937_64& rng, int channels, int w, int h) {
  std::vector<float> img(static_cast<std::size_t>(channels) * w * h, 0.0f);
  std::uniform_int_distribution<int> xs(0, w - 1), ys(0, h - 1);
  std::uniform_real_distribution<float> val(0.0f, 1.0f);
  for (int r = 0; r < 5; ++r) {
    int x0 = xs(rng), x1 = xs(rng), y0 = ys(rng), y1 = ys(rng);
    if (x0 > x1) std::swap(x0, x1);
    if (y0 > y1) std::swap(y0, y1);
    const int c = static_cast<int>(rng() % channels);
    const float v = val(rng);
    for (int y = y0; y <= y1; ++y)
      for (int x = x0; x <= x1; ++x) img[(static_cast<std::size_t>(c) * h + y) * w + x] = v;
  }
  return img;
}

// Smooth random field: random rectangles over per-pixel noise, so that no two
// gradient magnitudes tie exactly.
std::vector<float> noisy_rectangles(std::mt19937_64& rng, int channels, int w, int h) {
  auto img = rectangles(rng, channels, w, h);
  std::uniform_real_distribution<float> noise(0.0f, 0.05f);
  for (auto& v : img) v += noise(rng);
  return img;
}

bool has_full_2x2(const std::vector<std::uint8_t>& m, int w, int h) {
  for (int y = 0; y + 1 < h; ++y)
    for (int x = 0; x + 1 < w; ++x)
      if (m[y * w + x] && m[y * w + x + 1] && m[(y + 1) * w + x] && m[(y + 1) * w + x + 1]) return true;
  return false;
}

}  // namespace

TEST(Canny, MatchesIndependentImplementation) {
  std::mt19937_64 rng(21);
  long mismatches = 0, edges = 0;
  for (int trial = 0; trial < 20; ++trial) {
    const int w = 24 + trial, h = 30;
    const auto img = noisy_rectangles(rng, 3, w, h);
    const auto got = canny(img, 3, w, h);
    const auto want = oracle::canny(img, 3, w, h, 1.4, 0.1, 0.2);
    for (std::size_t i = 0; i < got.size(); ++i) {
      mismatches += got[i] != want[i];
      edges += want[i];
    }
  }
  ASSERT_GT(edges, 100);
  EXPECT_EQ(mismatches, 0) << mismatches << " of " << edges;
}

TEST(Canny, StepEdgeIsOnePixelThin) {
  const int w = 40, h = 40;
  for (int variant = 0; variant < 3; ++variant) {
    std::vector<float> img(w * h, 0.0f);
    for (int y = 0; y < h; ++y)
      for (int x = 0; x < w; ++x) {
        const bool on = variant == 0 ? x >= 20 : variant == 1 ? y >= 17 : x + y >= 40;
        img[y * w + x] = on ? 1.0f : 0.0f;
      }
    const auto m = canny(img, 1, w, h);
    long count = 0;
    for (auto v : m) count += v;
    EXPECT_GE(count, 30) << "variant " << variant;
    EXPECT_FALSE(has_full_2x2(m, w, h)) << "variant " << variant;
  }
}

TEST(Canny, VerticalStepSitsOnTheBoundary) {
  const int w = 32, h = 16;
  std::vector<float> img(w * h, 0.0f);
  for (int y = 0; y < h; ++y)
    for (int x = 16; x < w; ++x) img[y * w + x] = 1.0f;
  const auto m = canny(img, 1, w, h);
  for (int y = 0; y < h; ++y) {
    int on = 0;
    for (int x = 0; x < w; ++x)
      if (m[y * w + x]) {
        ++on;
        EXPECT_TRUE(x == 15 || x == 16) << "x " << x;
      }
    EXPECT_EQ(on, 1) << "row " << y;
  }
}

TEST(Canny, ConstantImageHasNoEdges) {
  std::vector<float> img(3 * 20 * 20, 0.4f);
  for (auto v : canny(img, 3, 20, 20)) ASSERT_EQ(v, 0);
}

TEST(Canny, UsesEveryChannel) {
  const int w = 20, h = 20;
  std::vector<float> img(3 * w * h, 0.0f);
  for (int y = 0; y < h; ++y)
    for (int x = 10; x < w; ++x) img[(2 * h + y) * w + x] = 1.0f;
  long count = 0;
  for (auto v : canny(img, 3, w, h)) count += v;
  EXPECT_EQ(count, h);
}

TEST(Canny, HighThresholdAboveOneSuppressesEverything) {
  std::mt19937_64 rng(3);
  const auto img = rectangles(rng, 1, 30, 30);
  CannyParams p;
  p.high = 1.01;
  for (auto v : canny(img, 1, 30, 30, p)) ASSERT_EQ(v, 0);
}

TEST(Canny, HysteresisGrowsFromStrongSeeds) {
  std::mt19937_64 rng(4);
  const auto img = rectangles(rng, 1, 40, 40);
  CannyParams strict, loose;
  strict.low = strict.high = 0.2;
  loose.low = 0.05;
  loose.high = 0.2;
  const auto a = canny(img, 1, 40, 40, strict), b = canny(img, 1, 40, 40, loose);
  for (std::size_t i = 0; i < a.size(); ++i) ASSERT_LE(a[i], b[i]);
}
