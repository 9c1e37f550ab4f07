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

#include "sketchseg/checkpoint.hpp"

#include <fstream>
#include <sstream>

#include "sketchseg/binary_io.hpp"
#include "sketchseg/errors.hpp"

namespace sketchseg {

namespace io {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot write " + path);
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw Error("write failed: " + path);
}

}  // namespace io

namespace {

constexpr char kMagic[4] = {'S', 'K', 'S', 'G'};
constexpr std::uint8_t kDtypeF32 = 1;

enum Flags : std::uint8_t {
  kFlagBatchNorm = 1u << 0,
  kFlagActivationShift = 1,  // bits 1-2
  kFlagDropout = 1u << 3,
  kFlagShortcut = 1u << 4,
};

void write_layer(io::Writer& w, const LayerSpec& l, bool shortcut) {
  w.u8(static_cast<std::uint8_t>(l.kind));
  w.u32(static_cast<std::uint32_t>(l.kernel));
  w.u32(static_cast<std::uint32_t>(l.stride));
  w.u32(static_cast<std::uint32_t>(l.out_channels));
  std::uint8_t flags = 0;
  if (l.batch_norm) flags |= kFlagBatchNorm;
  flags |= static_cast<std::uint8_t>(static_cast<std::uint8_t>(l.activation) << kFlagActivationShift);
  if (l.dropout > 0.0) flags |= kFlagDropout;
  if (shortcut) flags |= kFlagShortcut;
  w.u8(flags);
}

LayerSpec read_layer(io::Reader& r, bool* shortcut) {
  LayerSpec l;
  const std::uint8_t kind = r.u8();
  if (kind > 2) throw FormatError("checkpoint: unknown layer kind " + std::to_string(kind));
  l.kind = static_cast<LayerKind>(kind);
  l.kernel = static_cast<int>(r.u32());
  l.stride = static_cast<int>(r.u32());
  l.out_channels = static_cast<int>(r.u32());
  const std::uint8_t flags = r.u8();
  l.batch_norm = flags & kFlagBatchNorm;
  const int act = (flags >> kFlagActivationShift) & 0x3;
  if (act > 2) throw FormatError("checkpoint: unknown activation " + std::to_string(act));
  l.activation = static_cast<Activation>(act);
  l.dropout = (flags & kFlagDropout) ? kDropoutP : 0.0;
  if (shortcut) *shortcut = flags & kFlagShortcut;
  if (l.kernel <= 0 || l.stride <= 0 || l.out_channels <= 0 || l.kernel > 64 || l.out_channels > (1 << 16))
    throw FormatError("checkpoint: implausible layer record");
  return l;
}

}  // namespace

std::string encode_checkpoint(const Model& model) {
  io::Writer w;
  w.raw(std::string_view(kMagic, 4));
  w.u32(kCheckpointVersion);
  w.str(model.category);
  w.u32(static_cast<std::uint32_t>(model.spec.k));
  w.u32(static_cast<std::uint32_t>(model.label_names.size()));
  for (const auto& n : model.label_names) w.str(n);

  const auto& spec = model.spec;
  w.u32(static_cast<std::uint32_t>(spec.input_side));
  w.u32(static_cast<std::uint32_t>(spec.levels()));
  for (const auto& l : spec.encoder) write_layer(w, l, false);
  for (int j = 0; j < spec.levels(); ++j) {
    const auto ju = static_cast<std::size_t>(j);
    if (spec.bottleneck[ju]) write_layer(w, *spec.bottleneck[ju], false);
    write_layer(w, spec.decoder[ju], spec.shortcut[ju] >= 0);
  }

  std::uint32_t count = 0;
  model.for_each_param([&](const std::string&, const Tensor&) { ++count; });
  w.u32(count);
  model.for_each_param([&](const std::string& name, const Tensor& t) {
    w.str(name);
    w.u8(kDtypeF32);
    w.u32(static_cast<std::uint32_t>(t.rank()));
    for (int d : t.shape()) w.u32(static_cast<std::uint32_t>(d));
    for (float v : t.values()) w.f32(v);
  });
  return std::move(w).take();
}

Model decode_checkpoint(const std::string& bytes) {
  io::Reader r(bytes, "checkpoint");
  if (r.raw(4) != std::string_view(kMagic, 4)) throw FormatError("checkpoint: bad magic (expected SKSG)");
  const std::uint32_t version = r.u32();
  if (version != kCheckpointVersion)
    throw FormatError("checkpoint: unsupported version " + std::to_string(version));

  std::string category = r.str();
  const auto k = static_cast<int>(r.u32());
  const std::uint32_t n_names = r.u32();
  if (n_names > 4096) throw FormatError("checkpoint: implausible label count");
  std::vector<std::string> names;
  for (std::uint32_t i = 0; i < n_names; ++i) names.push_back(r.str());
  if (static_cast<int>(names.size()) != k)
    throw FormatError("checkpoint: k = " + std::to_string(k) + " but " + std::to_string(names.size()) +
                      " label names");

  NetworkSpec spec;
  spec.k = k;
  spec.input_side = static_cast<int>(r.u32());
  const auto levels = static_cast<int>(r.u32());
  if (levels < 1 || levels > 16) throw FormatError("checkpoint: implausible level count");
  for (int i = 0; i < levels; ++i) spec.encoder.push_back(read_layer(r, nullptr));
  for (int j = 0; j < levels; ++j) {
    bool shortcut = false;
    LayerSpec l = read_layer(r, &shortcut);
    std::optional<LayerSpec> squeeze;
    if (l.kind == LayerKind::Bottleneck) {
      squeeze = l;
      l = read_layer(r, &shortcut);
    }
    spec.bottleneck.push_back(squeeze);
    spec.decoder.push_back(l);
    spec.shortcut.push_back(shortcut ? levels - 1 - j : -1);
  }
  try {
    validate_spec(spec);
  } catch (const InvalidArgument& e) {
    throw FormatError(std::string("checkpoint: inconsistent network spec: ") + e.what());
  }

  Model model = Model::zeros(spec, std::move(category), std::move(names));
  std::uint32_t expected = 0;
  model.for_each_param([&](const std::string&, const Tensor&) { ++expected; });
  const std::uint32_t count = r.u32();
  if (count != expected)
    throw FormatError("checkpoint: " + std::to_string(count) + " parameter records, spec needs " +
                      std::to_string(expected));
  model.for_each_param([&](const std::string& name, Tensor& t) {
    const std::string got = r.str();
    if (got != name) throw FormatError("checkpoint: expected parameter " + name + ", found " + got);
    if (r.u8() != kDtypeF32) throw FormatError("checkpoint: " + name + " has unsupported dtype");
    const auto rank = r.u32();
    if (rank != static_cast<std::uint32_t>(t.rank()))
      throw FormatError("checkpoint: " + name + " has rank " + std::to_string(rank));
    for (int d : t.shape())
      if (r.u32() != static_cast<std::uint32_t>(d))
        throw FormatError("checkpoint: " + name + " shape does not match " + shape_string(t.shape()));
    for (auto& v : t.values()) v = r.f32();
  });
  if (!r.at_end()) throw FormatError("checkpoint: trailing bytes after parameters");
  return model;
}

void save_checkpoint(const Model& model, const std::string& path) { io::write_file(path, encode_checkpoint(model)); }

Model load_checkpoint(const std::string& path) { return decode_checkpoint(io::read_file(path)); }

}  // namespace sketchseg
