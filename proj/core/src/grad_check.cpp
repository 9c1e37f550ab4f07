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

#include "sketchseg/grad_check.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <random>

#include "sketchseg/errors.hpp"
#include "sketchseg/nn.hpp"

namespace sketchseg::nn {

namespace {

constexpr double kStep = 1e-4;
constexpr double kFloor = 1e-3;

void randomize(TensorD& t, std::mt19937_64& rng, double lo, double hi) {
  std::uniform_real_distribution<double> u(lo, hi);
  for (auto& v : t.values()) v = u(rng);
}

double inner(const TensorD& a, const TensorD& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

// Perturbs every element of every input and compares the central difference
// of `f` against the matching analytic gradient.
GradCheckResult compare(std::vector<TensorD*> inputs, const std::vector<TensorD>& analytic,
                        const std::function<double()>& f) {
  GradCheckResult res;
  for (std::size_t t = 0; t < inputs.size(); ++t) {
    TensorD& x = *inputs[t];
    if (analytic[t].shape() != x.shape()) throw ShapeError("analytic gradient shape mismatch in grad_check");
    for (std::size_t i = 0; i < x.size(); ++i) {
      const double saved = x[i];
      x[i] = saved + kStep;
      const double fp = f();
      x[i] = saved - kStep;
      const double fm = f();
      x[i] = saved;
      const double numeric = (fp - fm) / (2.0 * kStep);
      const double a = analytic[t][i];
      const double rel = std::abs(a - numeric) / std::max({std::abs(a), std::abs(numeric), kFloor});
      res.max_rel_error = std::max(res.max_rel_error, rel);
      ++res.checked;
    }
  }
  return res;
}

}  // namespace

GradCheckResult grad_check(CheckedKernel kernel, const GradCheckShape& s, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  switch (kernel) {
    case CheckedKernel::Conv2d: {
      TensorD x(s.n, s.c_in, s.h, s.w), w(s.c_out, s.c_in, s.kernel, s.kernel), b(std::vector<int>{s.c_out});
      randomize(x, rng, -2, 2);
      randomize(w, rng, -2, 2);
      randomize(b, rng, -2, 2);
      TensorD r = conv2d(x, w, b, s.stride);
      randomize(r, rng, -1, 1);
      auto g = conv2d_backward(x, w, s.stride, r);
      return compare({&x, &w, &b}, {g.dx, g.dweight, g.dbias}, [&] { return inner(conv2d(x, w, b, s.stride), r); });
    }
    case CheckedKernel::Upconv2d: {
      TensorD x(s.n, s.c_in, s.h, s.w), w(s.c_in, s.c_out, s.kernel, s.kernel), b(std::vector<int>{s.c_out});
      randomize(x, rng, -2, 2);
      randomize(w, rng, -2, 2);
      randomize(b, rng, -2, 2);
      TensorD r = upconv2d(x, w, b, s.stride);
      randomize(r, rng, -1, 1);
      auto g = upconv2d_backward(x, w, s.stride, r);
      return compare({&x, &w, &b}, {g.dx, g.dweight, g.dbias}, [&] { return inner(upconv2d(x, w, b, s.stride), r); });
    }
    case CheckedKernel::BatchNorm: {
      TensorD x(s.n, s.c_in, s.h, s.w), scale(std::vector<int>{s.c_in}), shift(std::vector<int>{s.c_in});
      randomize(x, rng, -2, 2);
      randomize(scale, rng, -2, 2);
      randomize(shift, rng, -2, 2);
      TensorD r(x.shape());
      randomize(r, rng, -1, 1);
      BatchNormCache<double> cache;
      batchnorm(x, scale, shift, &cache);
      auto g = batchnorm_backward(r, scale, cache);
      return compare({&x, &scale, &shift}, {g.dx, g.dscale, g.dshift},
                     [&] { return inner(batchnorm(x, scale, shift), r); });
    }
    case CheckedKernel::LeakyRelu: {
      TensorD x(s.n, s.c_in, s.h, s.w);
      std::uniform_real_distribution<double> mag(1e-3 + 2 * kStep, 2.0);
      std::bernoulli_distribution sign(0.5);
      for (auto& v : x.values()) v = sign(rng) ? mag(rng) : -mag(rng);
      TensorD r(x.shape());
      randomize(r, rng, -1, 1);
      TensorD dx = leaky_relu_backward(x, r, s.slope);
      return compare({&x}, {dx}, [&] { return inner(leaky_relu(x, s.slope), r); });
    }
    case CheckedKernel::SoftmaxCrossEntropy: {
      TensorD logits(s.n, s.c_out, s.h, s.w);
      randomize(logits, rng, -2, 2);
      std::uniform_int_distribution<int> lab(0, s.c_out - 1);
      std::vector<int> target(static_cast<std::size_t>(s.n) * s.h * s.w);
      for (auto& t : target) t = lab(rng);
      auto loss = softmax_cross_entropy(logits, target);
      return compare({&logits}, {loss.grad}, [&] { return softmax_cross_entropy(logits, target).loss; });
    }
    case CheckedKernel::ConcatChannels: {
      TensorD a(s.n, s.c_in, s.h, s.w), b(s.n, s.c_out, s.h, s.w);
      randomize(a, rng, -2, 2);
      randomize(b, rng, -2, 2);
      TensorD r = concat_channels(a, b);
      randomize(r, rng, -1, 1);
      auto [da, db] = split_channels(r, s.c_in);
      return compare({&a, &b}, {da, db}, [&] { return inner(concat_channels(a, b), r); });
    }
  }
  throw InvalidArgument("unknown kernel");
}

}  // namespace sketchseg::nn
