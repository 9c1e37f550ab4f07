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

#include "sketchseg/canny.hpp"
#include "sketchseg/mesh.hpp"
#include "sketchseg/render.hpp"
#include "sketchseg/sample.hpp"

namespace sketchseg {

/// Depth slack, in units of the bounding radius, before a part edge counts as hidden.
inline constexpr double kDepthTestEpsilon = 1e-3;

struct EdgeMapPair {
  EdgeMapSample plain;         // every part edge, hidden ones included
  EdgeMapSample depth_tested;  // hidden part edges removed
};

/// Renders each part alone, runs Canny and labels its edges with the part.
/// Overlapping edges keep the nearer part. Both variants share the renders.
EdgeMapPair make_edge_map_pair(const LabeledMesh& mesh, const Camera& camera, const CannyParams& canny = {});

EdgeMapSample make_edge_map_sample(const LabeledMesh& mesh, const Camera& camera, bool depth_tested,
                                   const CannyParams& canny = {});

/// Canny edges of one part rendered alone in the full-model frame.
std::vector<std::uint8_t> part_edge_image(const LabeledMesh& mesh, const Camera& camera, int label,
                                          const CannyParams& canny = {});

}  // namespace sketchseg
