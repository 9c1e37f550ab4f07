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

#include "sketchseg/render.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "sketchseg/errors.hpp"

namespace sketchseg {

namespace {

struct V3 {
  double x, y, z;
};

V3 operator-(V3 a, V3 b) { return {a.x - b.x, a.y - b.y, a.z - b.z}; }
double dot(V3 a, V3 b) { return a.x * b.x + a.y * b.y + a.z * b.z; }
V3 cross(V3 a, V3 b) { return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x}; }
V3 normalized(V3 a) {
  double n = std::sqrt(dot(a, a));
  return n > 0.0 ? V3{a.x / n, a.y / n, a.z / n} : a;
}

struct View {
  V3 eye, right, up, forward;
  double focal, half;
};

View make_view(const Camera& cam) {
  double az = cam.azimuth * std::numbers::pi / 180.0;
  double el = cam.elevation * std::numbers::pi / 180.0;
  View v;
  v.eye = {cam.distance * std::cos(el) * std::sin(az), cam.distance * std::sin(el),
           cam.distance * std::cos(el) * std::cos(az)};
  v.forward = normalized(V3{0, 0, 0} - v.eye);
  v.right = normalized(cross(v.forward, V3{0, 1, 0}));
  v.up = cross(v.right, v.forward);
  v.half = cam.side / 2.0;
  v.focal = v.half / std::tan(cam.fov * std::numbers::pi / 360.0);
  return v;
}

}  // namespace

std::vector<Camera> sample_viewpoints(int n_azimuth, const std::vector<double>& elevations,
                                      const std::vector<double>& distances, int side) {
  if (n_azimuth < 1) throw InvalidArgument("need at least one azimuth");
  if (side < 1) throw InvalidArgument("image side must be positive");
  std::vector<Camera> out;
  for (int a = 0; a < n_azimuth; ++a)
    for (double el : elevations)
      for (double d : distances) {
        if (!(el > 0.0 && el < 90.0)) throw InvalidArgument("elevation must lie in (0, 90) degrees");
        if (!(d > 1.0)) throw InvalidArgument("camera distance must exceed the bounding radius");
        Camera c;
        c.azimuth = 360.0 * a / n_azimuth;
        c.elevation = el;
        c.distance = d;
        c.side = side;
        out.push_back(c);
      }
  return out;
}

GBuffer render_normal_depth(const LabeledMesh& mesh, const Camera& camera, int part_filter) {
  if (camera.side < 1) throw InvalidArgument("image side must be positive");
  const int side = camera.side;
  const std::size_t pixels = static_cast<std::size_t>(side) * side;
  GBuffer g;
  g.side = side;
  g.normal.assign(3 * pixels, 0.0f);
  g.depth.assign(pixels, std::numeric_limits<float>::infinity());
  g.part_id.assign(pixels, 0);
  std::vector<double> zbuf(pixels, std::numeric_limits<double>::infinity());

  const View view = make_view(camera);
  bool any = false;
  for (std::size_t t = 0; t < mesh.triangles.size(); ++t) {
    if (part_filter != 0 && mesh.part_of[t] != part_filter) continue;
    any = true;
    V3 w[3];
    double sx[3], sy[3], z[3];
    bool behind = false;
    for (int i = 0; i < 3; ++i) {
      const Vec3& p = mesh.vertices[mesh.triangles[t][i]];
      w[i] = {p.x, p.y, p.z};
      V3 d = w[i] - view.eye;
      z[i] = dot(d, view.forward);
      if (z[i] <= 1e-3) behind = true;
      sx[i] = view.half + view.focal * dot(d, view.right) / z[i];
      sy[i] = view.half - view.focal * dot(d, view.up) / z[i];
    }
    if (behind) continue;
    double area = (sx[1] - sx[0]) * (sy[2] - sy[0]) - (sx[2] - sx[0]) * (sy[1] - sy[0]);
    if (std::abs(area) < 1e-12) continue;

    V3 n = normalized(cross(w[1] - w[0], w[2] - w[0]));
    V3 centroid{(w[0].x + w[1].x + w[2].x) / 3, (w[0].y + w[1].y + w[2].y) / 3, (w[0].z + w[1].z + w[2].z) / 3};
    if (dot(n, view.eye - centroid) < 0.0) n = {-n.x, -n.y, -n.z};
    const float nc[3] = {static_cast<float>((dot(n, view.right) + 1.0) / 2.0),
                         static_cast<float>((dot(n, view.up) + 1.0) / 2.0),
                         static_cast<float>((-dot(n, view.forward) + 1.0) / 2.0)};

    int x0 = std::max(0, static_cast<int>(std::floor(std::min({sx[0], sx[1], sx[2]}))));
    int x1 = std::min(side - 1, static_cast<int>(std::ceil(std::max({sx[0], sx[1], sx[2]}))));
    int y0 = std::max(0, static_cast<int>(std::floor(std::min({sy[0], sy[1], sy[2]}))));
    int y1 = std::min(side - 1, static_cast<int>(std::ceil(std::max({sy[0], sy[1], sy[2]}))));
    for (int y = y0; y <= y1; ++y)
      for (int x = x0; x <= x1; ++x) {
        double px = x + 0.5, py = y + 0.5;
        double b0 = ((sx[1] - px) * (sy[2] - py) - (sx[2] - px) * (sy[1] - py)) / area;
        double b1 = ((sx[2] - px) * (sy[0] - py) - (sx[0] - px) * (sy[2] - py)) / area;
        double b2 = 1.0 - b0 - b1;
        if (b0 < 0.0 || b1 < 0.0 || b2 < 0.0) continue;
        double depth = 1.0 / (b0 / z[0] + b1 / z[1] + b2 / z[2]);
        std::size_t idx = g.index(x, y);
        if (!(depth < zbuf[idx])) continue;
        zbuf[idx] = depth;
        g.depth[idx] = static_cast<float>(depth);
        g.part_id[idx] = mesh.part_of[t];
        for (int c = 0; c < 3; ++c) g.normal[c * pixels + idx] = nc[c];
      }
  }
  if (!any) throw InvalidArgument("no geometry for part " + std::to_string(part_filter) + " in mesh '" + mesh.id + "'");
  return g;
}

}  // namespace sketchseg
