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

#include "sketchseg/tensor.hpp"

#include <cmath>
#include <sstream>

namespace sketchseg {

std::string shape_string(const std::vector<int>& shape) {
  std::ostringstream os;
  os << '(';
  for (std::size_t i = 0; i < shape.size(); ++i) {
    if (i) os << 'x';
    os << shape[i];
  }
  os << ')';
  return os.str();
}

template <typename T>
bool all_finite(const BasicTensor<T>& t) noexcept {
  for (T v : t.values())
    if (!std::isfinite(v)) return false;
  return true;
}

template bool all_finite(const BasicTensor<float>&) noexcept;
template bool all_finite(const BasicTensor<double>&) noexcept;

}  // namespace sketchseg
