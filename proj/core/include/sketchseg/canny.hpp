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
#include <vector>

namespace sketchseg {

struct CannyParams {
  double sigma = 1.4;  // Gaussian radius is round(3 * sigma)
  double low = 0.1;    // hysteresis thresholds on magnitude normalized by the image maximum
  double high = 0.2;
};

/// Multi-channel Canny: Gaussian blur, per-channel Sobel keeping the channel of
/// largest magnitude, non-maximum suppression along the quantized gradient
/// direction, 8-connected hysteresis. `image` is channels x height x width.
/// Returns a 0/1 mask.
std::vector<std::uint8_t> canny(std::span<const float> image, int channels, int width, int height,
                                const CannyParams& params = {});

}  // namespace sketchseg
