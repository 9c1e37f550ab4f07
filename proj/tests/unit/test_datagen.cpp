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

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "sketchseg/datagen.hpp"
#include "sketchseg/errors.hpp"
#include "sketchseg/pgm.hpp"
#include "sketchseg/synth.hpp"

using namespace sketchseg;
namespace fs = std::filesystem;

namespace {

const LabelSet kLabels("test", {"background", "a", "b"});

std::string square(double half, double z, const std::string& part, int first) {
  std::ostringstream s;
  s << "g part_" << part << "\n";
  for (auto [x, y] : {std::pair{-1, -1}, {1, -1}, {1, 1}, {-1, 1}}) s << "v " << x * half << " " << y * half << " " << z << "\n";
  s << "f " << first << " " << first + 1 << " " << first + 2 << " " << first + 3 << "\n";
  return s.str();
}

Camera front(int side = 96) {
  Camera c;
  c.azimuth = 0.0;
  c.elevation = 5.0;
  c.distance = 3.0;
  c.side = side;
  return c;
}

void expect_consistent(const EdgeMapSample& s) {
  ASSERT_EQ(s.image.size(), static_cast<std::size_t>(s.side) * s.side);
  ASSERT_EQ(s.labels.size(), s.image.size());
  for (std::size_t i = 0; i < s.image.size(); ++i) ASSERT_EQ(s.image[i] != 0, s.labels[i] > 0) << i;
}

fs::path scratch(const std::string& name) {
  fs::path p = fs::temp_directory_path() / ("sketchseg_" + name);
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

}  // namespace

TEST(Datagen, DepthTestedIsASubsetOfPlain) {
  const MeshCollection chairs = load_mesh_collection(std::string(SKETCHSEG_DATA_DIR) + "/meshes/chair");
  const auto cams = sample_viewpoints(4, {15.0, 55.0}, {3.0}, 96);
  long removed = 0;
  for (const auto& mesh : chairs.meshes)
    for (const auto& cam : cams) {
      const EdgeMapPair p = make_edge_map_pair(mesh, cam);
      expect_consistent(p.plain);
      expect_consistent(p.depth_tested);
      for (std::size_t i = 0; i < p.plain.image.size(); ++i) {
        if (p.depth_tested.image[i]) {
          ASSERT_EQ(p.depth_tested.labels[i], p.plain.labels[i]);
        }
        ASSERT_LE(p.depth_tested.image[i], p.plain.image[i]);
        removed += p.plain.image[i] - p.depth_tested.image[i];
      }
      EXPECT_TRUE(p.depth_tested.provenance.depth_tested);
      EXPECT_FALSE(p.plain.provenance.depth_tested);
      EXPECT_EQ(p.plain.provenance.source, mesh.id);
    }
  EXPECT_GT(removed, 0);
}

TEST(Datagen, HiddenPartLosesItsEdges) {
  const LabeledMesh m = parse_labeled_mesh(square(1.0, 0.3, "a", 1) + square(0.4, -0.3, "b", 5), kLabels, "occ");
  const EdgeMapPair p = make_edge_map_pair(m, front());
  long plain_b = 0, tested_b = 0, tested_a = 0;
  for (std::size_t i = 0; i < p.plain.labels.size(); ++i) {
    plain_b += p.plain.labels[i] == 2;
    tested_b += p.depth_tested.labels[i] == 2;
    tested_a += p.depth_tested.labels[i] == 1;
  }
  EXPECT_GT(plain_b, 20);
  EXPECT_EQ(tested_b, 0);
  EXPECT_GT(tested_a, 20);
}

TEST(Datagen, SinglePartVariantsAgree) {
  const LabeledMesh m = parse_labeled_mesh(square(1.0, 0.0, "b", 1), kLabels, "one");
  const EdgeMapPair p = make_edge_map_pair(m, front());
  EXPECT_EQ(p.plain.image, p.depth_tested.image);
  EXPECT_EQ(p.plain.labels, p.depth_tested.labels);
  long n = 0;
  for (int l : p.plain.labels) {
    EXPECT_TRUE(l == 0 || l == 2);
    n += l == 2;
  }
  EXPECT_GT(n, 40);
  EXPECT_EQ(part_edge_image(m, front(), 2), p.plain.image);
}

TEST(Datagen, SingleSampleMatchesThePair) {
  const MeshCollection chairs = load_mesh_collection(std::string(SKETCHSEG_DATA_DIR) + "/meshes/chair");
  const Camera cam = sample_viewpoints(12, {35.0}, {3.0}, 64)[3];
  const EdgeMapPair p = make_edge_map_pair(chairs.meshes[1], cam);
  EXPECT_EQ(make_edge_map_sample(chairs.meshes[1], cam, true).labels, p.depth_tested.labels);
  EXPECT_EQ(make_edge_map_sample(chairs.meshes[1], cam, false).labels, p.plain.labels);
}

TEST(Pgm, RoundTrips) {
  const fs::path dir = scratch("pgm");
  GrayImage img{5, 3, {0, 1, 2, 3, 4, 250, 251, 252, 253, 254, 255, 9, 8, 7, 6}};
  write_pgm((dir / "a.pgm").string(), img);
  const GrayImage back = read_pgm((dir / "a.pgm").string());
  EXPECT_EQ(back.width, 5);
  EXPECT_EQ(back.height, 3);
  EXPECT_EQ(back.pixels, img.pixels);
  EXPECT_THROW(read_pgm((dir / "missing.pgm").string()), FormatError);
  { std::ofstream((dir / "bad.pgm").string()) << "P2\n1 1\n255\n0\n"; }
  EXPECT_THROW(read_pgm((dir / "bad.pgm").string()), FormatError);
  { std::ofstream((dir / "short.pgm").string(), std::ios::binary) << "P5\n4 4\n255\nab"; }
  EXPECT_THROW(read_pgm((dir / "short.pgm").string()), FormatError);
  GrayImage wrong{2, 2, {1, 2, 3}};
  EXPECT_THROW(write_pgm((dir / "w.pgm").string(), wrong), ShapeError);
  fs::remove_all(dir);
}

TEST(Manifest, SamplesRoundTrip) {
  const fs::path dir = scratch("manifest");
  const auto items = synth_sketch_dataset(synth_category("table"), 3, 5, 48);
  Manifest m;
  m.category = "table";
  m.label_names = synth_category("table").label_names();
  for (int i = 0; i < 3; ++i) m.entries.push_back(write_sample(dir.string(), i, items[i].sample));
  write_manifest((dir / "manifest.txt").string(), m);

  const Manifest back = read_manifest((dir / "manifest.txt").string());
  EXPECT_EQ(back.category, "table");
  EXPECT_EQ(back.label_names, m.label_names);
  EXPECT_EQ(back.k(), 4);
  ASSERT_EQ(back.entries.size(), 3u);
  for (int i = 0; i < 3; ++i) {
    const EdgeMapSample s = read_sample(back.entries[i]);
    EXPECT_EQ(s.side, 48);
    EXPECT_EQ(s.image, items[i].sample.image);
    EXPECT_EQ(s.labels, items[i].sample.labels);
  }
  fs::remove_all(dir);
}

TEST(Manifest, RejectsInconsistentFiles) {
  const fs::path dir = scratch("manifest_bad");
  { std::ofstream((dir / "m1.txt").string()) << "category x\nk 3\nlabels background a\n"; }
  EXPECT_THROW(read_manifest((dir / "m1.txt").string()), FormatError);
  { std::ofstream((dir / "m2.txt").string()) << "k 2\nlabels background a\n"; }
  EXPECT_THROW(read_manifest((dir / "m2.txt").string()), FormatError);
  { std::ofstream((dir / "m3.txt").string()) << "category x\nk 2\nlabels background a\nbogus 1\n"; }
  EXPECT_THROW(read_manifest((dir / "m3.txt").string()), FormatError);

  EdgeMapSample s;
  s.side = 2;
  s.image = {1, 0, 0, 1};
  s.labels = {1, 0, 0, 1};
  const auto entry = write_sample(dir.string(), 0, s);
  GrayImage lbl{2, 2, {1, 0, 0, 0}};
  write_pgm((dir / entry.labels).string(), lbl);
  Manifest::Entry abs{(dir / entry.image).string(), (dir / entry.labels).string(), ""};
  EXPECT_THROW(read_sample(abs), FormatError);
  fs::remove_all(dir);
}

TEST(Synth, IsDeterministicPerSeed) {
  const auto cat = synth_category("lamp");
  const auto a = synth_sketch_dataset(cat, 4, 9, 64), b = synth_sketch_dataset(cat, 4, 9, 64),
             c = synth_sketch_dataset(cat, 4, 10, 64);
  ASSERT_EQ(a.size(), 4u);
  for (int i = 0; i < 4; ++i) {
    EXPECT_EQ(a[i].sketch, b[i].sketch);
    EXPECT_EQ(a[i].sample.labels, b[i].sample.labels);
  }
  EXPECT_NE(a[0].sketch, c[0].sketch);
}

TEST(Synth, SamplesAreLabeledRastersOfTheirSketches) {
  for (const auto& name : synth_category_names()) {
    const auto cat = synth_category(name);
    for (const auto& item : synth_sketch_dataset(cat, 5, 1, 64)) {
      expect_consistent(item.sample);
      EXPECT_TRUE(item.sketch.fully_labeled());
      EXPECT_EQ(item.sketch.category, name);
      const EdgeMapSample again = sample_from_sketch(item.sketch, 64);
      EXPECT_EQ(again.labels, item.sample.labels);
      std::vector<bool> seen(cat.parts.size() + 1, false);
      for (int l : item.sample.labels) {
        ASSERT_LT(l, static_cast<int>(seen.size()));
        seen[l] = true;
      }
      for (std::size_t p = 1; p < seen.size(); ++p) EXPECT_TRUE(seen[p]) << name << " part " << p;
    }
  }
  EXPECT_THROW(synth_category("spaceship"), InvalidArgument);
}
