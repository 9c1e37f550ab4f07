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

namespace sketchseg {

struct Provenance {
  std::string source;  // mesh id or "synth:<category>:<index>"
  int camera_index = -1;
  double azimuth = 0.0;
  double elevation = 0.0;
  double distance = 0.0;
  bool depth_tested = false;
};

/// Binary edge image with per-pixel part labels; labels > 0 exactly where image == 1.
struct EdgeMapSample {
  int side = 0;
  std::vector<std::uint8_t> image;
  std::vector<int> labels;
  Provenance provenance;
};

}  // namespace sketchseg
