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
#include <string_view>

#include "sketchseg/sketch.hpp"

namespace sketchseg {

/// Parses the UTF-8 JSON sketch document (format version 1). Points are
/// clamped into the canvas. Throws ParseError naming the offending path.
Sketch parse_sketch(std::string_view text);

/// Serializes to the JSON sketch document. Unknown fields are never emitted.
std::string serialize_sketch(const Sketch& sketch);

Sketch load_sketch(const std::string& path);
void save_sketch(const Sketch& sketch, const std::string& path);

}  // namespace sketchseg
