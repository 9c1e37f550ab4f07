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
#include <span>
#include <utility>
#include <vector>

#include "sketchseg/tensor.hpp"

// Forward/backward kernels for the hourglass network. Every kernel is a pure
// function of its inputs; templates are instantiated for float and double.
namespace sketchseg::nn {

/// Spatial plan of a same-halving convolution: out = in / stride, padding
/// (out - 1) * stride + kernel - in split with the smaller half on top/left.
struct ConvGeometry {
  int in_h = 0, in_w = 0;
  int out_h = 0, out_w = 0;
  int kernel = 0, stride = 1;
  int pad_top = 0, pad_left = 0;
};

ConvGeometry same_halving(int in_h, int in_w, int kernel, int stride);

template <typename T>
struct ConvGrads {
  BasicTensor<T> dx;
  BasicTensor<T> dweight;
  BasicTensor<T> dbias;
};

/// Cross-correlation. weight: (Cout, Cin, k, k); bias: (Cout).
template <typename T>
BasicTensor<T> conv2d(const BasicTensor<T>& x, const BasicTensor<T>& weight, const BasicTensor<T>& bias, int stride);

template <typename T>
ConvGrads<T> conv2d_backward(const BasicTensor<T>& x, const BasicTensor<T>& weight, int stride,
                             const BasicTensor<T>& dy);

/// Transposed convolution, the adjoint of conv2d over the doubled output.
/// weight: (Cin, Cout, k, k); bias: (Cout). Output spatial = input * stride.
template <typename T>
BasicTensor<T> upconv2d(const BasicTensor<T>& x, const BasicTensor<T>& weight, const BasicTensor<T>& bias, int stride);

template <typename T>
ConvGrads<T> upconv2d_backward(const BasicTensor<T>& x, const BasicTensor<T>& weight, int stride,
                               const BasicTensor<T>& dy);

inline constexpr double kBatchNormEps = 1e-5;

template <typename T>
struct BatchNormCache {
  BasicTensor<T> xhat;
  std::vector<T> inv_std;
};

template <typename T>
struct BatchNormGrads {
  BasicTensor<T> dx;
  BasicTensor<T> dscale;
  BasicTensor<T> dshift;
};

/// Normalizes each channel with the mean/variance of the current batch over
/// (N, H, W). There is no running average: inference uses batch statistics too.
template <typename T>
BasicTensor<T> batchnorm(const BasicTensor<T>& x, const BasicTensor<T>& scale, const BasicTensor<T>& shift,
                         BatchNormCache<T>* cache = nullptr);

template <typename T>
BatchNormGrads<T> batchnorm_backward(const BasicTensor<T>& dy, const BasicTensor<T>& scale,
                                     const BatchNormCache<T>& cache);

/// Inverted dropout. With training == false or p == 0 the input is returned
/// unchanged. When `mask` is given it receives the per-element multiplier.
template <typename T>
BasicTensor<T> dropout(const BasicTensor<T>& x, double p, bool training, std::uint64_t seed,
                       BasicTensor<T>* mask = nullptr);

template <typename T>
BasicTensor<T> leaky_relu(const BasicTensor<T>& x, double slope);

template <typename T>
BasicTensor<T> leaky_relu_backward(const BasicTensor<T>& x, const BasicTensor<T>& dy, double slope);

template <typename T>
BasicTensor<T> relu(const BasicTensor<T>& x) {
  return leaky_relu(x, 0.0);
}

/// Channel concatenation; `a` occupies the leading channels.
template <typename T>
BasicTensor<T> concat_channels(const BasicTensor<T>& a, const BasicTensor<T>& b);

/// Inverse of concat_channels: the first `channels_a` channels and the rest.
template <typename T>
std::pair<BasicTensor<T>, BasicTensor<T>> split_channels(const BasicTensor<T>& x, int channels_a);

template <typename T>
struct LossValue {
  double loss = 0.0;
  BasicTensor<T> grad;  // d loss / d logits
};

/// Per-pixel softmax over channels followed by the summed negative
/// log-likelihood of `target` (N*H*W labels in [0, k)). Every pixel counts.
template <typename T>
LossValue<T> softmax_cross_entropy(const BasicTensor<T>& logits, std::span<const int> target);

template <typename T>
BasicTensor<T> softmax(const BasicTensor<T>& logits);

struct AdamConfig {
  double lr = 1e-4;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double eps = 1e-8;
};

struct AdamState {
  std::vector<float> m;
  std::vector<float> v;
  long step = 0;  // completed updates

  explicit AdamState(std::size_t n = 0) : m(n, 0.0f), v(n, 0.0f) {}
};

/// One bias-corrected Adam update; advances `state.step`.
void adam_step(std::span<float> params, std::span<const float> grads, AdamState& state, const AdamConfig& cfg = {});

}  // namespace sketchseg::nn
