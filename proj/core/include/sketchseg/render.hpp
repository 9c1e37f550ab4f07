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

#include <vector>

#include "sketchseg/mesh.hpp"

namespace sketchseg {

/// Perspective camera on the upper viewing hemisphere, looking at the origin with +Y up.
struct Camera {
  double azimuth = 0.0;    // degrees
  double elevation = 30.0; // degrees, in (0, 90)
  double distance = 2.2;   // multiples of the bounding radius
  double fov = 40.0;       // vertical field of view, degrees
  int side = 256;

  friend bool operator==(const Camera&, const Camera&) = default;
};

/// Azimuths evenly spaced from 0 degrees crossed with every elevation and distance.
/// Defaults give 12 x 3 x 2 = 72 cameras.
std::vector<Camera> sample_viewpoints(int n_azimuth = 12, const std::vector<double>& elevations = {15.0, 35.0, 55.0},
                                      const std::vector<double>& distances = {2.2, 3.0}, int side = 256);

struct GBuffer {
  int side = 0;
  std::vector<float> normal;  // 3 x side x side, camera-space normals mapped to [0, 1]; 0 where empty
  std::vector<float> depth;   // camera-space depth; +inf where empty
  std::vector<int> part_id;   // 0 where empty

  std::size_t index(int x, int y) const noexcept {
    return static_cast<std::size_t>(y) * static_cast<std::size_t>(side) + static_cast<std::size_t>(x);
  }
};

/// Z-buffered rasterization with flat per-face normals. `part_filter` = 0
/// renders every part; otherwise only triangles of that label.
GBuffer render_normal_depth(const LabeledMesh& mesh, const Camera& camera, int part_filter = 0);

}  // namespace sketchseg
