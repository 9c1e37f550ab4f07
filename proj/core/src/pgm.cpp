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

#include "sketchseg/pgm.hpp"

#include <cctype>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "sketchseg/errors.hpp"

namespace sketchseg {

namespace fs = std::filesystem;

void write_pgm(const std::string& path, const GrayImage& image) {
  if (image.pixels.size() != static_cast<std::size_t>(image.width) * image.height)
    throw ShapeError("pgm pixel count does not match its dimensions");
  std::ofstream f(path, std::ios::binary);
  if (!f) throw Error("cannot write " + path);
  f << "P5\n" << image.width << " " << image.height << "\n255\n";
  f.write(reinterpret_cast<const char*>(image.pixels.data()), static_cast<std::streamsize>(image.pixels.size()));
  if (!f) throw Error("cannot write " + path);
}

GrayImage read_pgm(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw FormatError("cannot open " + path);
  auto token = [&]() {
    std::string t;
    char c;
    while (f.get(c)) {
      if (c == '#') {
        std::string skip;
        std::getline(f, skip);
        continue;
      }
      if (std::isspace(static_cast<unsigned char>(c))) {
        if (!t.empty()) break;
        continue;
      }
      t.push_back(c);
    }
    return t;
  };
  if (token() != "P5") throw FormatError(path + ": not a binary PGM");
  GrayImage img;
  int maxval = 0;
  try {
    img.width = std::stoi(token());
    img.height = std::stoi(token());
    maxval = std::stoi(token());
  } catch (const std::exception&) {
    throw FormatError(path + ": bad PGM header");
  }
  if (img.width < 1 || img.height < 1 || maxval < 1 || maxval > 255) throw FormatError(path + ": unsupported PGM");
  img.pixels.resize(static_cast<std::size_t>(img.width) * img.height);
  f.read(reinterpret_cast<char*>(img.pixels.data()), static_cast<std::streamsize>(img.pixels.size()));
  if (f.gcount() != static_cast<std::streamsize>(img.pixels.size())) throw FormatError(path + ": truncated PGM");
  return img;
}

void write_manifest(const std::string& path, const Manifest& m) {
  for (const auto& name : m.label_names)
    if (name.empty() || name.find_first_of(" \t\n") != std::string::npos)
      throw InvalidArgument("label names must be non-empty without whitespace");
  std::ofstream f(path);
  if (!f) throw Error("cannot write " + path);
  f << "# sketchseg manifest v1\n";
  f << "category " << m.category << "\n";
  f << "k " << m.k() << "\n";
  f << "labels";
  for (const auto& name : m.label_names) f << " " << name;
  f << "\n";
  for (const auto& e : m.entries) {
    f << "sample " << e.image << " " << e.labels;
    if (!e.sketch.empty()) f << " " << e.sketch;
    f << "\n";
  }
}

Manifest read_manifest(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw FormatError("cannot open " + path);
  const fs::path base = fs::path(path).parent_path();
  auto resolve = [&](const std::string& p) { return fs::path(p).is_absolute() ? p : (base / p).string(); };
  Manifest m;
  int k = -1;
  std::string line;
  int n = 0;
  while (std::getline(f, line)) {
    ++n;
    std::istringstream ls(line);
    std::string tag;
    if (!(ls >> tag) || tag[0] == '#') continue;
    if (tag == "category") {
      ls >> m.category;
    } else if (tag == "k") {
      ls >> k;
    } else if (tag == "labels") {
      std::string name;
      while (ls >> name) m.label_names.push_back(name);
    } else if (tag == "sample") {
      Manifest::Entry e;
      if (!(ls >> e.image >> e.labels)) throw FormatError(path + ":" + std::to_string(n) + ": sample needs two paths");
      e.image = resolve(e.image);
      e.labels = resolve(e.labels);
      if (ls >> e.sketch) e.sketch = resolve(e.sketch);
      m.entries.push_back(std::move(e));
    } else {
      throw FormatError(path + ":" + std::to_string(n) + ": unknown directive '" + tag + "'");
    }
  }
  if (m.category.empty()) throw FormatError(path + ": missing category");
  if (k != m.k() || k < 2) throw FormatError(path + ": k does not match the label list");
  return m;
}

Manifest::Entry write_sample(const std::string& dir, int index, const EdgeMapSample& sample) {
  char stem[32];
  std::snprintf(stem, sizeof stem, "%05d", index);
  Manifest::Entry e{std::string(stem) + "_img.pgm", std::string(stem) + "_lbl.pgm", {}};
  GrayImage img{sample.side, sample.side, {}};
  img.pixels.resize(sample.image.size());
  for (std::size_t i = 0; i < img.pixels.size(); ++i) img.pixels[i] = sample.image[i] ? 255 : 0;
  write_pgm((fs::path(dir) / e.image).string(), img);
  for (std::size_t i = 0; i < img.pixels.size(); ++i) {
    if (sample.labels[i] < 0 || sample.labels[i] > 255) throw InvalidArgument("label outside [0, 255]");
    img.pixels[i] = static_cast<std::uint8_t>(sample.labels[i]);
  }
  write_pgm((fs::path(dir) / e.labels).string(), img);
  return e;
}

EdgeMapSample read_sample(const Manifest::Entry& entry) {
  GrayImage img = read_pgm(entry.image);
  GrayImage lbl = read_pgm(entry.labels);
  if (img.width != img.height || lbl.width != img.width || lbl.height != img.height)
    throw ShapeError(entry.image + ": image and label maps must be equal squares");
  EdgeMapSample s;
  s.side = img.width;
  s.image.resize(img.pixels.size());
  s.labels.resize(img.pixels.size());
  for (std::size_t i = 0; i < img.pixels.size(); ++i) {
    s.image[i] = img.pixels[i] >= 128 ? 1 : 0;
    s.labels[i] = s.image[i] ? lbl.pixels[i] : 0;
    if (s.image[i] && s.labels[i] == 0) throw FormatError(entry.labels + ": edge pixel without a part label");
  }
  s.provenance.source = entry.image;
  return s;
}

}  // namespace sketchseg
