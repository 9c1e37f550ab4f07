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

namespace sketchseg::nn {

enum class CheckedKernel { Conv2d, Upconv2d, BatchNorm, LeakyRelu, SoftmaxCrossEntropy, ConcatChannels };

struct GradCheckShape {
  int n = 2;
  int c_in = 2;
  int c_out = 3;
  int h = 4;
  int w = 4;
  int kernel = 4;
  int stride = 2;
  double slope = 0.2;  // leaky_relu only
};

struct GradCheckResult {
  double max_rel_error = 0.0;
  long checked = 0;  // number of scalar derivatives compared
};

/// Compares analytic gradients with central finite differences (double
/// precision, step 1e-4) of f = <forward(inputs), r> for random r. Inputs are
/// drawn from [-2, 2]; leaky_relu inputs stay at least 1e-3 away from 0.
/// The relative error of one derivative is |a - n| / max(|a|, |n|, 1e-3).
GradCheckResult grad_check(CheckedKernel kernel, const GradCheckShape& shape, std::uint64_t seed);

}  // namespace sketchseg::nn
