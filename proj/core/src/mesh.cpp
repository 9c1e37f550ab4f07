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

#include "sketchseg/mesh.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>
#include <set>
#include <sstream>

#include "sketchseg/errors.hpp"

namespace sketchseg {

namespace {

Vec3 sub(const Vec3& a, const Vec3& b) { return {a.x - b.x, a.y - b.y, a.z - b.z}; }
Vec3 cross(const Vec3& a, const Vec3& b) { return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x}; }
double norm(const Vec3& a) { return std::sqrt(a.x * a.x + a.y * a.y + a.z * a.z); }

std::string line_path(int line) { return "line " + std::to_string(line); }

int parse_index(std::string_view token, int vertex_count, int line) {
  auto slash = token.find('/');
  if (slash != std::string_view::npos) token = token.substr(0, slash);
  int v = 0;
  auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), v);
  if (ec != std::errc() || ptr != token.data() + token.size() || v == 0)
    throw ParseError(line_path(line), "bad face index '" + std::string(token) + "'");
  int idx = v > 0 ? v - 1 : vertex_count + v;
  if (idx < 0 || idx >= vertex_count) throw ParseError(line_path(line), "face index out of range");
  return idx;
}

double parse_double(const std::string& token, int line) {
  try {
    std::size_t used = 0;
    double v = std::stod(token, &used);
    if (used != token.size() || !std::isfinite(v)) throw std::invalid_argument(token);
    return v;
  } catch (const std::exception&) {
    throw ParseError(line_path(line), "bad coordinate '" + token + "'");
  }
}

}  // namespace

std::vector<int> LabeledMesh::labels_present() const {
  std::set<int> s(part_of.begin(), part_of.end());
  return {s.begin(), s.end()};
}

LabeledMesh parse_labeled_mesh(std::string_view obj_text, const LabelSet& labels, std::string id) {
  LabeledMesh mesh;
  mesh.id = std::move(id);
  mesh.part_names = labels.names();
  int current = 0;
  std::istringstream in{std::string(obj_text)};
  std::string raw;
  int line = 0;
  while (std::getline(in, raw)) {
    ++line;
    if (auto hash = raw.find('#'); hash != std::string::npos) raw.resize(hash);
    std::istringstream ls(raw);
    std::string tag;
    if (!(ls >> tag)) continue;
    if (tag == "v") {
      std::string a, b, c;
      if (!(ls >> a >> b >> c)) throw ParseError(line_path(line), "vertex needs three coordinates");
      mesh.vertices.push_back({parse_double(a, line), parse_double(b, line), parse_double(c, line)});
    } else if (tag == "g" || tag == "o") {
      std::string name;
      ls >> name;
      constexpr std::string_view prefix = "part_";
      if (name.rfind(prefix, 0) != 0) throw ParseError(line_path(line), "group '" + name + "' is not part_<name>");
      std::string part = name.substr(prefix.size());
      int label = labels.index_of(part);
      if (label < 1) throw ParseError(line_path(line), "unknown part name '" + part + "'");
      current = label;
    } else if (tag == "f") {
      std::vector<int> idx;
      std::string tok;
      while (ls >> tok) idx.push_back(parse_index(tok, static_cast<int>(mesh.vertices.size()), line));
      if (idx.size() < 3) throw ParseError(line_path(line), "face needs at least three vertices");
      if (current == 0) throw ParseError(line_path(line), "face outside a part group");
      for (std::size_t i = 1; i + 1 < idx.size(); ++i) {
        std::array<int, 3> t{idx[0], idx[i], idx[i + 1]};
        if (t[0] == t[1] || t[1] == t[2] || t[0] == t[2]) continue;
        const Vec3& p0 = mesh.vertices[t[0]];
        Vec3 n = cross(sub(mesh.vertices[t[1]], p0), sub(mesh.vertices[t[2]], p0));
        if (norm(n) <= 1e-12) continue;
        mesh.triangles.push_back(t);
        mesh.part_of.push_back(current);
      }
    }
  }
  if (mesh.triangles.empty()) throw ParseError("", "mesh '" + mesh.id + "' has no labeled triangles");
  normalize_mesh(mesh);
  return mesh;
}

LabeledMesh load_labeled_mesh(const std::string& path, const LabelSet& labels) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw ParseError(path, "cannot open mesh");
  std::stringstream ss;
  ss << f.rdbuf();
  std::string id = path;
  if (auto slash = id.find_last_of('/'); slash != std::string::npos) id = id.substr(slash + 1);
  if (auto dot = id.rfind('.'); dot != std::string::npos) id.resize(dot);
  try {
    return parse_labeled_mesh(ss.str(), labels, id);
  } catch (const ParseError& e) {
    throw ParseError(path + (e.path().empty() ? "" : ":" + e.path()), e.what());
  }
}

MeshCollection load_mesh_collection(const std::string& dir) {
  namespace fs = std::filesystem;
  const fs::path label_file = fs::path(dir) / "labels.txt";
  std::ifstream f(label_file);
  if (!f) throw ParseError(label_file.string(), "cannot open label list");
  std::string category;
  std::vector<std::string> names;
  std::string line;
  while (std::getline(f, line)) {
    std::istringstream ls(line);
    std::string tag;
    if (!(ls >> tag) || tag[0] == '#') continue;
    if (tag == "category") {
      ls >> category;
    } else if (tag == "labels") {
      for (std::string n; ls >> n;) names.push_back(n);
    } else {
      throw ParseError(label_file.string(), "unknown directive '" + tag + "'");
    }
  }
  if (category.empty()) throw ParseError(label_file.string(), "missing category");
  MeshCollection out{LabelSet(category, names), {}};
  std::vector<fs::path> files;
  for (const auto& e : fs::directory_iterator(dir))
    if (e.is_regular_file() && e.path().extension() == ".obj") files.push_back(e.path());
  std::sort(files.begin(), files.end());
  for (const auto& p : files) out.meshes.push_back(load_labeled_mesh(p.string(), out.labels));
  if (out.meshes.empty()) throw InvalidArgument("no .obj meshes in " + dir);
  return out;
}

void normalize_mesh(LabeledMesh& mesh) {
  if (mesh.triangles.empty()) throw InvalidArgument("cannot normalize an empty mesh");
  constexpr double inf = std::numeric_limits<double>::infinity();
  Vec3 lo{inf, inf, inf}, hi{-inf, -inf, -inf};
  std::vector<char> used(mesh.vertices.size(), 0);
  for (const auto& t : mesh.triangles)
    for (int i : t) used[i] = 1;
  for (std::size_t i = 0; i < mesh.vertices.size(); ++i) {
    if (!used[i]) continue;
    const Vec3& v = mesh.vertices[i];
    lo = {std::min(lo.x, v.x), std::min(lo.y, v.y), std::min(lo.z, v.z)};
    hi = {std::max(hi.x, v.x), std::max(hi.y, v.y), std::max(hi.z, v.z)};
  }
  Vec3 c{(lo.x + hi.x) / 2, (lo.y + hi.y) / 2, (lo.z + hi.z) / 2};
  double r = 0.0;
  for (std::size_t i = 0; i < mesh.vertices.size(); ++i)
    if (used[i]) r = std::max(r, norm(sub(mesh.vertices[i], c)));
  double s = r > 0.0 ? 1.0 / r : 1.0;
  for (auto& v : mesh.vertices) v = {(v.x - c.x) * s, (v.y - c.y) * s, (v.z - c.z) * s};
}

Box3 part_box(const LabeledMesh& mesh, int label) {
  constexpr double inf = std::numeric_limits<double>::infinity();
  Vec3 lo{inf, inf, inf}, hi{-inf, -inf, -inf};
  bool any = false;
  for (std::size_t t = 0; t < mesh.triangles.size(); ++t) {
    if (mesh.part_of[t] != label) continue;
    any = true;
    for (int i : mesh.triangles[t]) {
      const Vec3& v = mesh.vertices[i];
      lo = {std::min(lo.x, v.x), std::min(lo.y, v.y), std::min(lo.z, v.z)};
      hi = {std::max(hi.x, v.x), std::max(hi.y, v.y), std::max(hi.z, v.z)};
    }
  }
  if (!any) throw InvalidArgument("mesh '" + mesh.id + "' has no part with label " + std::to_string(label));
  return {{(lo.x + hi.x) / 2, (lo.y + hi.y) / 2, (lo.z + hi.z) / 2}, {hi.x - lo.x, hi.y - lo.y, hi.z - lo.z}};
}

std::vector<LabeledMesh> augment_scale(const LabeledMesh& mesh, std::span<const double> factors) {
  for (double f : factors)
    if (!(f > 0.0) || !std::isfinite(f)) throw InvalidArgument("scale factors must be positive");
  std::vector<LabeledMesh> out{mesh};
  for (double sx : factors)
    for (double sy : factors)
      for (double sz : factors) {
        if (sx == sy && sy == sz) continue;
        LabeledMesh m = mesh;
        std::ostringstream tag;
        tag << mesh.id << "@" << sx << "," << sy << "," << sz;
        m.id = tag.str();
        for (auto& v : m.vertices) v = {v.x * sx, v.y * sy, v.z * sz};
        normalize_mesh(m);
        out.push_back(std::move(m));
      }
  return out;
}

std::vector<LabeledMesh> augment_scale(const LabeledMesh& mesh) {
  constexpr double defaults[] = {0.5, 1.5};
  return augment_scale(mesh, defaults);
}

}  // namespace sketchseg
