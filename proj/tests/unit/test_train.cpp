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

#include "sketchseg/checkpoint.hpp"
#include "sketchseg/errors.hpp"
#include "sketchseg/synth.hpp"
#include "sketchseg/train.hpp"

using namespace sketchseg;

namespace {

std::vector<EdgeMapSample> lamp_samples(int n, std::uint64_t seed) {
  std::vector<EdgeMapSample> out;
  for (auto& item : synth_sketch_dataset(synth_category("lamp"), n, seed, 64)) out.push_back(std::move(item.sample));
  return out;
}

const std::vector<std::string> kLampLabels{"background", "base", "pole", "shade"};

}  // namespace

TEST(Train, LossDecreasesOnASmallSet) {
  auto data = lamp_samples(4, 1);
  TrainConfig cfg;
  cfg.batch = 2;
  cfg.steps = 40;
  cfg.log_every = 40;
  cfg.adam.lr = 1e-3;
  auto r = train(data, build_network(4, Profile::Reduced), "lamp", kLampLabels, cfg);
  ASSERT_EQ(r.trace.size(), 2u);
  EXPECT_EQ(r.trace.front().step, 1);
  EXPECT_EQ(r.trace.back().step, 40);
  EXPECT_LT(r.trace.back().loss, 0.5 * r.trace.front().loss);
}

TEST(Train, SameSeedGivesIdenticalCheckpoints) {
  auto data = lamp_samples(3, 2);
  TrainConfig cfg;
  cfg.batch = 2;
  cfg.steps = 3;
  cfg.seed = 11;
  const NetworkSpec spec = build_network(4, Profile::Reduced);
  const std::string a = encode_checkpoint(train(data, spec, "lamp", kLampLabels, cfg).model);
  const std::string b = encode_checkpoint(train(data, spec, "lamp", kLampLabels, cfg).model);
  EXPECT_EQ(a, b);
  cfg.seed = 12;
  EXPECT_NE(a, encode_checkpoint(train(data, spec, "lamp", kLampLabels, cfg).model));
}

TEST(Train, RejectsBadDatasets) {
  const NetworkSpec spec = build_network(4, Profile::Reduced);
  TrainConfig cfg;
  cfg.steps = 1;
  EXPECT_THROW(train({}, spec, "lamp", kLampLabels, cfg), InvalidArgument);
  auto data = lamp_samples(1, 3);
  data[0].labels[data[0].labels.size() / 2] = 9;
  data[0].image[data[0].labels.size() / 2] = 1;
  EXPECT_THROW(train(data, spec, "lamp", kLampLabels, cfg), InvalidArgument);
  auto wrong_side = synth_sketch_dataset(synth_category("lamp"), 1, 1, 32);
  std::vector<EdgeMapSample> ws{wrong_side[0].sample};
  EXPECT_THROW(train(ws, spec, "lamp", kLampLabels, cfg), Error);
}

TEST(Checkpoint, RoundTripsExactly) {
  Model m = Model::initialize(build_network(4, Profile::Reduced), "lamp", kLampLabels, 9);
  const std::string bytes = encode_checkpoint(m);
  Model back = decode_checkpoint(bytes);
  EXPECT_EQ(back.spec, m.spec);
  EXPECT_EQ(back.category, "lamp");
  EXPECT_EQ(back.label_names, kLampLabels);
  EXPECT_EQ(encode_checkpoint(back), bytes);
  EXPECT_EQ(back.decoder[2].weight, m.decoder[2].weight);
}

TEST(Checkpoint, RoundTripsThroughFiles) {
  Model m = Model::initialize(build_network(3, Profile::Reduced), "mug", {"background", "body", "handle"}, 1);
  const auto path = (std::filesystem::temp_directory_path() / "sketchseg_ckpt_test.bin").string();
  save_checkpoint(m, path);
  EXPECT_EQ(encode_checkpoint(load_checkpoint(path)), encode_checkpoint(m));
  std::filesystem::remove(path);
  EXPECT_THROW(load_checkpoint(path), Error);
}

TEST(Checkpoint, DetectsCorruption) {
  Model m = Model::initialize(build_network(3, Profile::Reduced), "mug", {"background", "body", "handle"}, 1);
  std::string bytes = encode_checkpoint(m);
  std::string bad_magic = bytes;
  bad_magic[0] = 'X';
  EXPECT_THROW(decode_checkpoint(bad_magic), FormatError);
  EXPECT_THROW(decode_checkpoint(bytes.substr(0, bytes.size() / 2)), FormatError);
  EXPECT_THROW(decode_checkpoint(bytes + "x"), FormatError);
  std::string bad_version = bytes;
  bad_version[4] = 7;
  EXPECT_THROW(decode_checkpoint(bad_version), FormatError);
}
