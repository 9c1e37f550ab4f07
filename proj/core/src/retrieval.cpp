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

#include "sketchseg/retrieval.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <set>

#include "sketchseg/binary_io.hpp"
#include "sketchseg/datagen.hpp"
#include "sketchseg/errors.hpp"

namespace sketchseg {

namespace {

constexpr char kMagic[] = "SKFD";

double axis(const Vec3& v, int a) { return a == 0 ? v.x : a == 1 ? v.y : v.z; }

void write_box(io::Writer& w, const Box3& b) {
  for (double v : {b.center.x, b.center.y, b.center.z, b.size.x, b.size.y, b.size.z}) w.f64(v);
}

Box3 read_box(io::Reader& r) {
  Box3 b;
  b.center = {r.f64(), r.f64(), r.f64()};
  b.size = {r.f64(), r.f64(), r.f64()};
  return b;
}

}  // namespace

const Box3* ModelConfiguration::box(int label) const noexcept {
  for (const auto& [l, b] : parts)
    if (l == label) return &b;
  return nullptr;
}

const ModelConfiguration* FeatureDB::configuration(const std::string& mesh) const noexcept {
  for (const auto& c : configurations)
    if (c.mesh == mesh) return &c;
  return nullptr;
}

void FeatureDB::validate() const {
  auto positive = [](const Box3& b) { return b.size.x > 0 && b.size.y > 0 && b.size.z > 0; };
  for (const auto& c : configurations)
    for (const auto& [l, b] : c.parts)
      if (!positive(b)) throw FormatError("configuration '" + c.mesh + "' has a degenerate box");
  for (const auto& f : features) {
    if (f.vector.size() != kFeatureLength) throw FormatError("feature vector length must be 2048");
    if (!positive(f.box)) throw FormatError("feature of '" + f.mesh + "' has a degenerate box");
    const ModelConfiguration* c = configuration(f.mesh);
    if (!c || !c->box(f.label)) throw FormatError("feature of '" + f.mesh + "' has no source configuration");
  }
}

FeatureDB build_feature_db(const Model& model, std::span<const LabeledMesh> meshes, std::span<const Camera> cameras) {
  if (meshes.empty()) throw InvalidArgument("feature database needs at least one mesh");
  if (cameras.empty()) throw InvalidArgument("feature database needs at least one camera");
  FeatureDB db;
  db.category = model.category;
  const int side = model.spec.input_side;
  for (const auto& mesh : meshes) {
    if (mesh.triangles.empty()) throw InvalidArgument("mesh '" + mesh.id + "' is empty");
    ModelConfiguration config{mesh.id, {}};
    for (int label : mesh.labels_present()) {
      if (label >= model.spec.k) throw InvalidArgument("mesh '" + mesh.id + "' carries a label outside the model");
      config.parts.emplace_back(label, part_box(mesh, label));
    }
    for (std::size_t ci = 0; ci < cameras.size(); ++ci) {
      Camera cam = cameras[ci];
      cam.side = side;
      for (const auto& [label, box] : config.parts) {
        RasterImage img(side, side);
        img.values = part_edge_image(mesh, cam, label);
        db.features.push_back({label, mesh.id, static_cast<int>(ci), box, extract_features(model, img)});
      }
    }
    if (!db.configuration(mesh.id)) db.configurations.push_back(std::move(config));
  }
  db.validate();
  return db;
}

std::string encode_feature_db(const FeatureDB& db) {
  db.validate();
  io::Writer w;
  w.raw(std::string_view(kMagic, 4));
  w.u32(kFeatureDbVersion);
  w.str(db.category);
  w.u32(static_cast<std::uint32_t>(db.features.size()));
  for (const auto& f : db.features) {
    w.u32(static_cast<std::uint32_t>(f.label));
    w.str(f.mesh);
    w.u32(static_cast<std::uint32_t>(f.camera));
    write_box(w, f.box);
    for (float v : f.vector) w.f32(v);
  }
  w.u32(static_cast<std::uint32_t>(db.configurations.size()));
  for (const auto& c : db.configurations) {
    w.str(c.mesh);
    w.u32(static_cast<std::uint32_t>(c.parts.size()));
    for (const auto& [label, box] : c.parts) {
      w.u32(static_cast<std::uint32_t>(label));
      write_box(w, box);
    }
  }
  return std::move(w).take();
}

FeatureDB decode_feature_db(const std::string& bytes) {
  io::Reader r(bytes, "feature database");
  if (r.raw(4) != std::string_view(kMagic, 4)) throw FormatError("feature database: bad magic");
  if (std::uint32_t v = r.u32(); v != kFeatureDbVersion)
    throw FormatError("feature database: unsupported version " + std::to_string(v));
  FeatureDB db;
  db.category = r.str();
  const std::uint32_t n = r.u32();
  for (std::uint32_t i = 0; i < n; ++i) {
    PartFeature f;
    f.label = static_cast<int>(r.u32());
    f.mesh = r.str();
    f.camera = static_cast<int>(r.u32());
    f.box = read_box(r);
    f.vector.resize(kFeatureLength);
    for (float& v : f.vector) v = r.f32();
    db.features.push_back(std::move(f));
  }
  const std::uint32_t m = r.u32();
  for (std::uint32_t i = 0; i < m; ++i) {
    ModelConfiguration c;
    c.mesh = r.str();
    const std::uint32_t parts = r.u32();
    for (std::uint32_t p = 0; p < parts; ++p) {
      int label = static_cast<int>(r.u32());
      c.parts.emplace_back(label, read_box(r));
    }
    db.configurations.push_back(std::move(c));
  }
  if (!r.at_end()) throw FormatError("feature database: trailing bytes");
  db.validate();
  return db;
}

void save_feature_db(const FeatureDB& db, const std::string& path) { io::write_file(path, encode_feature_db(db)); }

FeatureDB load_feature_db(const std::string& path) {
  try {
    return decode_feature_db(io::read_file(path));
  } catch (const FormatError& e) {
    throw FormatError(path + ": " + e.what());
  }
}

double euclidean_distance(std::span<const float> a, std::span<const float> b) {
  if (a.size() != b.size()) throw ShapeError("feature vectors differ in length");
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    double d = static_cast<double>(a[i]) - static_cast<double>(b[i]);
    s += d * d;
  }
  return std::sqrt(s);
}

QueryResult query_parts(std::span<const float> feature, int label, const FeatureDB& db, std::size_t top_n) {
  if (feature.size() != kFeatureLength) throw ShapeError("query feature length must be 2048");
  QueryResult out;
  for (std::size_t i = 0; i < db.features.size(); ++i) {
    const auto& f = db.features[i];
    if (f.label != label) continue;
    out.candidates.push_back({f.mesh, f.camera, euclidean_distance(feature, f.vector), i});
  }
  if (out.candidates.empty()) {
    out.warning = "no parts with label " + std::to_string(label) + " in the '" + db.category + "' database";
    return out;
  }
  std::sort(out.candidates.begin(), out.candidates.end(), [](const Candidate& a, const Candidate& b) {
    if (a.distance != b.distance) return a.distance < b.distance;
    if (a.mesh != b.mesh) return a.mesh < b.mesh;
    if (a.camera != b.camera) return a.camera < b.camera;
    return a.index < b.index;
  });
  if (out.candidates.size() > top_n) out.candidates.resize(top_n);
  return out;
}

Assembly assemble(std::span<const Selection> selections, const FeatureDB& db) {
  const int n = static_cast<int>(selections.size());
  if (n == 0) throw InvalidArgument("assembly needs at least one part");
  std::set<int> seen;
  std::vector<const ModelConfiguration*> source(n);
  for (int i = 0; i < n; ++i) {
    if (!seen.insert(selections[i].label).second) throw InvalidArgument("each part label may be selected once");
    source[i] = db.configuration(selections[i].mesh);
    if (!source[i] || !source[i]->box(selections[i].label))
      throw InvalidArgument("no configuration of '" + selections[i].mesh + "' with label " +
                            std::to_string(selections[i].label));
  }

  struct Row {
    int i, j;
    Vec3 offset;
  };
  std::vector<Row> rows;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;
      const ModelConfiguration* cfg = source[j];
      if (!cfg->box(selections[i].label)) cfg = source[i]->box(selections[j].label) ? source[i] : nullptr;
      if (!cfg) continue;
      const Vec3 ci = cfg->box(selections[i].label)->center, cj = cfg->box(selections[j].label)->center;
      rows.push_back({i, j, {cj.x - ci.x, cj.y - ci.y, cj.z - ci.z}});
    }

  Assembly out;
  out.parts.resize(n);
  std::vector<Eigen::VectorXd> solved(3, Eigen::VectorXd::Zero(n));
  if (n > 1) {
    // Unknowns c_1..c_{n-1} per axis; c_0 is fixed at the origin.
    Eigen::MatrixXd a = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(rows.size()), n - 1);
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (rows[r].j > 0) a(r, rows[r].j - 1) += 1.0;
      if (rows[r].i > 0) a(r, rows[r].i - 1) -= 1.0;
    }
    const Eigen::MatrixXd normal = a.transpose() * a;
    Eigen::LDLT<Eigen::MatrixXd> ldlt(normal);
    if (ldlt.info() != Eigen::Success || !ldlt.isPositive() || ldlt.vectorD().minCoeff() <= 1e-12)
      throw Error("assembly system is singular: parts share no source configuration");
    for (int ax = 0; ax < 3; ++ax) {
      Eigen::VectorXd b(static_cast<Eigen::Index>(rows.size()));
      for (std::size_t r = 0; r < rows.size(); ++r) b(r) = axis(rows[r].offset, ax);
      Eigen::VectorXd c = ldlt.solve(a.transpose() * b);
      solved[ax].tail(n - 1) = c;
      out.residual += (a * c - b).squaredNorm();
    }
  }
  for (int i = 0; i < n; ++i) {
    const Box3& src = *source[i]->box(selections[i].label);
    out.parts[i] = {selections[i].label, selections[i].mesh, selections[i].camera,
                    {solved[0](i), solved[1](i), solved[2](i)}, src.size};
  }
  return out;
}

}  // namespace sketchseg
