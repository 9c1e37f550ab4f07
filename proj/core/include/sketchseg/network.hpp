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
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "sketchseg/nn.hpp"
#include "sketchseg/sketch.hpp"
#include "sketchseg/tensor.hpp"

namespace sketchseg {

enum class LayerKind : std::uint8_t { Conv = 0, Bottleneck = 1, UpConv = 2 };
enum class Activation : std::uint8_t { None = 0, Relu = 1, LeakyRelu = 2 };

inline constexpr double kLeakySlope = 0.2;
inline constexpr double kDropoutP = 0.5;

struct LayerSpec {
  LayerKind kind = LayerKind::Conv;
  int kernel = 4;
  int stride = 2;
  int out_channels = 0;
  bool batch_norm = false;
  Activation activation = Activation::None;
  double dropout = 0.0;

  friend bool operator==(const LayerSpec&, const LayerSpec&) = default;
};

/// Declarative hourglass: `encoder[i]` halves the resolution, `decoder[j]`
/// doubles it. Before decoder layer j >= 1 the previous decoder output is
/// concatenated with `encoder[shortcut[j]]` and, when present, squeezed by
/// `bottleneck[j]` (1x1 conv, BN, ReLU halving the channels).
struct NetworkSpec {
  int k = 0;
  int input_side = 256;
  std::vector<LayerSpec> encoder;
  std::vector<LayerSpec> decoder;
  std::vector<std::optional<LayerSpec>> bottleneck;
  std::vector<int> shortcut;

  int levels() const noexcept { return static_cast<int>(encoder.size()); }
  /// Channels entering decoder layer j (after concatenation and bottleneck).
  int decoder_input_channels(int j) const;
  /// Channels of the concatenation feeding decoder layer j >= 1.
  int concat_channels(int j) const;

  friend bool operator==(const NetworkSpec&, const NetworkSpec&) = default;
};

/// Canonical: 256x256 input, seven levels. Reduced: 64x64 input, five levels, for CI-scale training.
enum class Profile { Canonical, Reduced };

NetworkSpec build_network(int k, Profile profile = Profile::Canonical, bool bottlenecks = true);

/// Throws InvalidArgument when `spec` is not a well-formed hourglass.
void validate_spec(const NetworkSpec& spec);

struct ParameterCount {
  long long encoder = 0;
  long long bottlenecks = 0;
  long long decoder_layers = 0;
  long long encoder_weights = 0;  // kernel weights only
  long long decoder_weights = 0;  // kernel weights of decoder layers and bottlenecks
  long long decoder() const noexcept { return bottlenecks + decoder_layers; }
  long long total() const noexcept { return encoder + decoder(); }
};

/// Weights, biases and batch-norm affine terms, by section.
ParameterCount count_parameters(const NetworkSpec& spec);

struct LayerParams {
  Tensor weight;
  Tensor bias;
  Tensor bn_scale;  // empty without batch norm
  Tensor bn_shift;
};

class Model {
 public:
  NetworkSpec spec;
  std::string category;
  std::vector<std::string> label_names;
  std::vector<LayerParams> encoder;
  std::vector<LayerParams> bottleneck;  // one slot per decoder layer; empty weight where absent
  std::vector<LayerParams> decoder;

  /// Allocates parameters for `spec`: He fan-in normal weights, zero biases,
  /// BN scale 1 / shift 0. Deterministic in `seed`.
  static Model initialize(const NetworkSpec& spec, std::string category, std::vector<std::string> label_names,
                          std::uint64_t seed);

  /// Zero-filled parameters shaped for `spec`.
  static Model zeros(const NetworkSpec& spec, std::string category, std::vector<std::string> label_names);

  /// Visits every parameter tensor in a fixed order with a stable name.
  void for_each_param(const std::function<void(const std::string&, Tensor&)>& fn);
  void for_each_param(const std::function<void(const std::string&, const Tensor&)>& fn) const;

  long long parameter_count() const;
};

/// Per-block intermediate values kept for the backward pass.
struct BlockTrace {
  Tensor input;
  Tensor pre_activation;
  nn::BatchNormCache<float> bn;
  Tensor mask;
};

struct ForwardTrace {
  std::vector<BlockTrace> encoder;
  std::vector<BlockTrace> bottleneck;
  std::vector<BlockTrace> decoder;
};

/// Full forward pass producing logits (N, k, side, side). Batch normalization
/// always uses the statistics of `x`; dropout is active only when `training`.
Tensor forward(const Model& model, const Tensor& x, bool training, std::uint64_t dropout_seed,
               ForwardTrace* trace = nullptr);

/// Gradients with the same layout as the model's parameters.
Model backward(const Model& model, const ForwardTrace& trace, const Tensor& dlogits);

/// Encoder-only inference; returns the bottleneck activations (N, C, 2, 2).
Tensor encode(const Model& model, const Tensor& x);

/// Stacks binary images into an (N, 1, side, side) tensor.
Tensor images_to_tensor(std::span<const RasterImage> images, int side);

/// Dropout off, batch statistics of this batch. Outputs align with inputs.
std::vector<SegMap> infer_batch(const Model& model, std::span<const RasterImage> images);

/// Bottleneck features of one image, batch-of-1 statistics, flattened in (H, W, C) order.
std::vector<float> extract_features(const Model& model, const RasterImage& image);

}  // namespace sketchseg
