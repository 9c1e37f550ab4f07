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

#include "sketchseg/network.hpp"

namespace sketchseg {

inline constexpr std::uint32_t kCheckpointVersion = 1;

/// Binary checkpoint: magic "SKSG", u32 version, category, k, label names,
/// the network spec (input side, layer records) and every parameter tensor.
/// All integers and floats are little-endian.
std::string encode_checkpoint(const Model& model);
Model decode_checkpoint(const std::string& bytes);

void save_checkpoint(const Model& model, const std::string& path);
Model load_checkpoint(const std::string& path);

}  // namespace sketchseg
