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

#include <array>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "sketchseg/sketch.hpp"

namespace sketchseg {

struct Vec3 {
  double x = 0.0, y = 0.0, z = 0.0;

  friend bool operator==(const Vec3&, const Vec3&) = default;
};

/// Axis-aligned box by center and full extent.
struct Box3 {
  Vec3 center;
  Vec3 size;

  friend bool operator==(const Box3&, const Box3&) = default;
};

/// Triangle mesh with one part label (>= 1) per triangle. Loaded meshes are
/// centered at the origin and scaled to a unit bounding sphere.
struct LabeledMesh {
  std::string id;
  std::vector<Vec3> vertices;
  std::vector<std::array<int, 3>> triangles;
  std::vector<int> part_of;
  std::vector<std::string> part_names;  // index = label, [0] = background

  /// Sorted distinct labels carried by at least one triangle.
  std::vector<int> labels_present() const;
};

/// Parses the OBJ subset: `v`, `f` (fan-triangulated; `a/b/c` tokens and
/// negative indices accepted), `g`/`o` with names `part_<label-name>`.
/// Degenerate faces are dropped. The result is normalized.
LabeledMesh parse_labeled_mesh(std::string_view obj_text, const LabelSet& labels, std::string id);
LabeledMesh load_labeled_mesh(const std::string& path, const LabelSet& labels);

/// A directory of `*.obj` files plus `labels.txt` holding `category <name>`
/// and `labels background <part>...`. Meshes come back sorted by file name.
struct MeshCollection {
  LabelSet labels;
  std::vector<LabeledMesh> meshes;
};
MeshCollection load_mesh_collection(const std::string& dir);

/// Centers the bounding box at the origin and scales the farthest vertex to distance 1.
void normalize_mesh(LabeledMesh& mesh);

/// Bounding box of every triangle carrying `label`.
Box3 part_box(const LabeledMesh& mesh, int label);

/// The original followed by every per-axis combination of `factors`, each
/// re-normalized. Uniform triples are skipped: after normalization they equal the original.
std::vector<LabeledMesh> augment_scale(const LabeledMesh& mesh, std::span<const double> factors);
std::vector<LabeledMesh> augment_scale(const LabeledMesh& mesh);

}  // namespace sketchseg
