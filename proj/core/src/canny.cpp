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

#include "sketchseg/canny.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "sketchseg/errors.hpp"

namespace sketchseg {

namespace {

std::vector<double> gaussian_kernel(double sigma, int& radius) {
  radius = static_cast<int>(std::lround(3.0 * sigma));
  std::vector<double> k(2 * radius + 1);
  double sum = 0.0;
  for (int i = -radius; i <= radius; ++i) sum += k[i + radius] = std::exp(-(i * i) / (2.0 * sigma * sigma));
  for (double& v : k) v /= sum;
  return k;
}

// Separable blur of one channel with replicated borders.
std::vector<double> blur(std::span<const float> src, int w, int h, const std::vector<double>& k, int r) {
  std::vector<double> tmp(static_cast<std::size_t>(w) * h), out(tmp.size());
  for (int y = 0; y < h; ++y)
    for (int x = 0; x < w; ++x) {
      double s = 0.0;
      for (int i = -r; i <= r; ++i) s += k[i + r] * src[static_cast<std::size_t>(y) * w + std::clamp(x + i, 0, w - 1)];
      tmp[static_cast<std::size_t>(y) * w + x] = s;
    }
  for (int y = 0; y < h; ++y)
    for (int x = 0; x < w; ++x) {
      double s = 0.0;
      for (int i = -r; i <= r; ++i) s += k[i + r] * tmp[static_cast<std::size_t>(std::clamp(y + i, 0, h - 1)) * w + x];
      out[static_cast<std::size_t>(y) * w + x] = s;
    }
  return out;
}

}  // namespace

std::vector<std::uint8_t> canny(std::span<const float> image, int channels, int width, int height,
                                const CannyParams& params) {
  if (channels < 1 || width < 1 || height < 1) throw InvalidArgument("canny needs a non-empty image");
  const std::size_t n = static_cast<std::size_t>(width) * height;
  if (image.size() != n * channels) throw ShapeError("canny image size does not match channels x height x width");
  if (!(params.sigma > 0.0) || !(params.low <= params.high)) throw InvalidArgument("bad canny parameters");

  int r = 0;
  const auto kernel = gaussian_kernel(params.sigma, r);
  std::vector<double> gx(n, 0.0), gy(n, 0.0), mag(n, 0.0);
  for (int c = 0; c < channels; ++c) {
    const auto b = blur(image.subspan(c * n, n), width, height, kernel, r);
    auto at = [&](int x, int y) {
      return b[static_cast<std::size_t>(std::clamp(y, 0, height - 1)) * width + std::clamp(x, 0, width - 1)];
    };
    for (int y = 0; y < height; ++y)
      for (int x = 0; x < width; ++x) {
        double dx = (at(x + 1, y - 1) + 2 * at(x + 1, y) + at(x + 1, y + 1)) -
                    (at(x - 1, y - 1) + 2 * at(x - 1, y) + at(x - 1, y + 1));
        double dy = (at(x - 1, y + 1) + 2 * at(x, y + 1) + at(x + 1, y + 1)) -
                    (at(x - 1, y - 1) + 2 * at(x, y - 1) + at(x + 1, y - 1));
        double m = std::sqrt(dx * dx + dy * dy);
        std::size_t i = static_cast<std::size_t>(y) * width + x;
        if (m > mag[i]) {
          mag[i] = m;
          gx[i] = dx;
          gy[i] = dy;
        }
      }
  }

  std::vector<std::uint8_t> out(n, 0);
  const double peak = *std::max_element(mag.begin(), mag.end());
  if (peak <= 1e-12) return out;
  for (double& m : mag) m /= peak;

  // Non-maximum suppression: strictly above the backward neighbor, at least the forward one.
  const double t1 = std::tan(std::numbers::pi / 8.0), t2 = std::tan(3.0 * std::numbers::pi / 8.0);
  auto mag_at = [&](int x, int y) {
    return (x < 0 || y < 0 || x >= width || y >= height) ? 0.0 : mag[static_cast<std::size_t>(y) * width + x];
  };
  std::vector<std::uint8_t> cls(n, 0);  // 0 none, 1 weak, 2 strong
  for (int y = 0; y < height; ++y)
    for (int x = 0; x < width; ++x) {
      std::size_t i = static_cast<std::size_t>(y) * width + x;
      double m = mag[i];
      if (m < params.low) continue;
      double ax = std::abs(gx[i]), ay = std::abs(gy[i]);
      int dx, dy;
      if (ay <= ax * t1) {
        dx = 1, dy = 0;
      } else if (ay >= ax * t2) {
        dx = 0, dy = 1;
      } else if ((gx[i] > 0) == (gy[i] > 0)) {
        dx = 1, dy = 1;
      } else {
        dx = -1, dy = 1;
      }
      if (m > mag_at(x - dx, y - dy) && m >= mag_at(x + dx, y + dy)) cls[i] = m >= params.high ? 2 : 1;
    }

  std::vector<std::size_t> stack;
  for (std::size_t i = 0; i < n; ++i)
    if (cls[i] == 2) {
      out[i] = 1;
      stack.push_back(i);
    }
  while (!stack.empty()) {
    std::size_t i = stack.back();
    stack.pop_back();
    int x = static_cast<int>(i % width), y = static_cast<int>(i / width);
    for (int oy = -1; oy <= 1; ++oy)
      for (int ox = -1; ox <= 1; ++ox) {
        int nx = x + ox, ny = y + oy;
        if (nx < 0 || ny < 0 || nx >= width || ny >= height) continue;
        std::size_t j = static_cast<std::size_t>(ny) * width + nx;
        if (cls[j] == 1 && !out[j]) {
          out[j] = 1;
          stack.push_back(j);
        }
      }
  }
  return out;
}

}  // namespace sketchseg
