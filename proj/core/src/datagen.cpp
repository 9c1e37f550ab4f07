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

#include "sketchseg/datagen.hpp"

#include <cmath>
#include <limits>

#include "sketchseg/errors.hpp"

namespace sketchseg {

namespace {

constexpr int kDepthSearchRadius = 3;

// Depth of the part at an edge pixel: the part's own depth there, else the
// nearest finite depth of the part within a small window.
double edge_depth(const GBuffer& g, int x, int y) {
  double d = g.depth[g.index(x, y)];
  if (std::isfinite(d)) return d;
  double best = std::numeric_limits<double>::infinity();
  for (int oy = -kDepthSearchRadius; oy <= kDepthSearchRadius; ++oy)
    for (int ox = -kDepthSearchRadius; ox <= kDepthSearchRadius; ++ox) {
      int nx = x + ox, ny = y + oy;
      if (nx < 0 || ny < 0 || nx >= g.side || ny >= g.side) continue;
      best = std::min(best, static_cast<double>(g.depth[g.index(nx, ny)]));
    }
  return best;
}

EdgeMapSample empty_sample(const LabeledMesh& mesh, const Camera& camera, bool depth_tested) {
  EdgeMapSample s;
  s.side = camera.side;
  s.image.assign(static_cast<std::size_t>(camera.side) * camera.side, 0);
  s.labels.assign(s.image.size(), 0);
  s.provenance.source = mesh.id;
  s.provenance.azimuth = camera.azimuth;
  s.provenance.elevation = camera.elevation;
  s.provenance.distance = camera.distance;
  s.provenance.depth_tested = depth_tested;
  return s;
}

}  // namespace

std::vector<std::uint8_t> part_edge_image(const LabeledMesh& mesh, const Camera& camera, int label,
                                          const CannyParams& params) {
  GBuffer g = render_normal_depth(mesh, camera, label);
  return canny(g.normal, 3, g.side, g.side, params);
}

EdgeMapPair make_edge_map_pair(const LabeledMesh& mesh, const Camera& camera, const CannyParams& params) {
  const GBuffer full = render_normal_depth(mesh, camera, 0);
  const std::size_t n = full.depth.size();
  std::vector<double> nearest(n, std::numeric_limits<double>::infinity());
  std::vector<int> label(n, 0);
  for (int p : mesh.labels_present()) {
    GBuffer g = render_normal_depth(mesh, camera, p);
    auto edges = canny(g.normal, 3, g.side, g.side, params);
    for (int y = 0; y < g.side; ++y)
      for (int x = 0; x < g.side; ++x) {
        std::size_t i = g.index(x, y);
        if (!edges[i]) continue;
        double d = edge_depth(g, x, y);
        if (label[i] == 0 || d < nearest[i]) {
          nearest[i] = d;
          label[i] = p;
        }
      }
  }

  EdgeMapPair pair{empty_sample(mesh, camera, false), empty_sample(mesh, camera, true)};
  const double eps = kDepthTestEpsilon;  // meshes are normalized to a unit bounding radius
  for (std::size_t i = 0; i < n; ++i) {
    if (label[i] == 0) continue;
    pair.plain.image[i] = 1;
    pair.plain.labels[i] = label[i];
    if (nearest[i] > static_cast<double>(full.depth[i]) + eps) continue;
    pair.depth_tested.image[i] = 1;
    pair.depth_tested.labels[i] = label[i];
  }
  return pair;
}

EdgeMapSample make_edge_map_sample(const LabeledMesh& mesh, const Camera& camera, bool depth_tested,
                                   const CannyParams& params) {
  auto pair = make_edge_map_pair(mesh, camera, params);
  return depth_tested ? std::move(pair.depth_tested) : std::move(pair.plain);
}

}  // namespace sketchseg
