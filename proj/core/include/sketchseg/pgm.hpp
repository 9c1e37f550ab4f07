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
#include <string>
#include <vector>

#include "sketchseg/sample.hpp"

namespace sketchseg {

struct GrayImage {
  int width = 0;
  int height = 0;
  std::vector<std::uint8_t> pixels;
};

/// Binary (P5) 8-bit PGM.
void write_pgm(const std::string& path, const GrayImage& image);
GrayImage read_pgm(const std::string& path);

/// Dataset listing: category, k, label names and image/label pairs (plus an
/// optional sketch document per pair). Paths are relative to the manifest.
struct Manifest {
  struct Entry {
    std::string image;
    std::string labels;
    std::string sketch;  // empty when absent
  };
  std::string category;
  std::vector<std::string> label_names;
  std::vector<Entry> entries;

  int k() const noexcept { return static_cast<int>(label_names.size()); }
};

void write_manifest(const std::string& path, const Manifest& manifest);
/// Entry paths come back resolved against the manifest's directory.
Manifest read_manifest(const std::string& path);

/// Writes `NNNN_img.pgm` (0/255) and `NNNN_lbl.pgm` (label index) into `dir`;
/// returns the entry with file names relative to `dir`.
Manifest::Entry write_sample(const std::string& dir, int index, const EdgeMapSample& sample);
EdgeMapSample read_sample(const Manifest::Entry& entry);

}  // namespace sketchseg
