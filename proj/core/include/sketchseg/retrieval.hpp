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
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "sketchseg/mesh.hpp"
#include "sketchseg/network.hpp"
#include "sketchseg/render.hpp"

namespace sketchseg {

inline constexpr std::size_t kFeatureLength = 2048;
inline constexpr std::uint32_t kFeatureDbVersion = 1;

struct PartFeature {
  int label = 0;
  std::string mesh;
  int camera = 0;
  Box3 box;  // the part's box in its source model's normalized frame
  std::vector<float> vector;
};

/// Every part box of one source model.
struct ModelConfiguration {
  std::string mesh;
  std::vector<std::pair<int, Box3>> parts;

  const Box3* box(int label) const noexcept;
};

struct FeatureDB {
  std::string category;
  std::vector<PartFeature> features;
  std::vector<ModelConfiguration> configurations;

  const ModelConfiguration* configuration(const std::string& mesh) const noexcept;
  /// Throws FormatError when a vector has the wrong length, a box is not
  /// strictly positive, or a feature's source configuration is missing.
  void validate() const;
};

/// One feature per (mesh, camera, part): the part rendered alone with the
/// full-model camera, fed through the encoder. Cameras take the model's input side.
FeatureDB build_feature_db(const Model& model, std::span<const LabeledMesh> meshes, std::span<const Camera> cameras);

std::string encode_feature_db(const FeatureDB& db);
FeatureDB decode_feature_db(const std::string& bytes);
void save_feature_db(const FeatureDB& db, const std::string& path);
FeatureDB load_feature_db(const std::string& path);

double euclidean_distance(std::span<const float> a, std::span<const float> b);

struct Candidate {
  std::string mesh;
  int camera = 0;
  double distance = 0.0;
  std::size_t index = 0;  // position in FeatureDB::features
};

struct QueryResult {
  std::vector<Candidate> candidates;
  std::string warning;  // set when the label has no features
};

/// Features of `label` by ascending distance, ties by (mesh, camera); at most `top_n`.
QueryResult query_parts(std::span<const float> feature, int label, const FeatureDB& db, std::size_t top_n);

struct Selection {
  int label = 0;
  std::string mesh;
  int camera = 0;
};

struct PlacedPart {
  int label = 0;
  std::string mesh;
  int camera = 0;
  Vec3 center;
  Vec3 size;
};

struct Assembly {
  std::vector<PlacedPart> parts;
  double residual = 0.0;  // summed squared residual of offsets and sizes
};

/// Least-squares placement. For each ordered pair (i, j) the target offset
/// c_j - c_i comes from part j's source model (or part i's when j's lacks
/// label i); sizes target the source sizes. The first part is fixed at the origin.
Assembly assemble(std::span<const Selection> selections, const FeatureDB& db);

}  // namespace sketchseg
