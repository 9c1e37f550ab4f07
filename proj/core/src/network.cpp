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

#include "sketchseg/network.hpp"

#include <cmath>
#include <random>

#include "sketchseg/errors.hpp"

namespace sketchseg {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

std::uint64_t block_seed(std::uint64_t seed, int block) {
  return splitmix64(seed ^ splitmix64(static_cast<std::uint64_t>(block) + 1));
}

LayerSpec encoder_layer(int index, int out_channels) {
  LayerSpec l;
  l.kind = LayerKind::Conv;
  l.kernel = index == 0 ? 8 : 4;
  l.stride = 2;
  l.out_channels = out_channels;
  l.batch_norm = index != 0;
  l.activation = Activation::LeakyRelu;
  l.dropout = index < 3 ? kDropoutP : 0.0;
  return l;
}

LayerSpec decoder_layer(int index, int levels, int out_channels) {
  const bool last = index == levels - 1;
  LayerSpec l;
  l.kind = LayerKind::UpConv;
  l.kernel = last ? 8 : 4;
  l.stride = 2;
  l.out_channels = out_channels;
  l.batch_norm = !last;
  l.activation = last ? Activation::None : Activation::Relu;
  l.dropout = index < 3 ? kDropoutP : 0.0;
  return l;
}

LayerSpec bottleneck_layer(int out_channels) {
  LayerSpec l;
  l.kind = LayerKind::Bottleneck;
  l.kernel = 1;
  l.stride = 1;
  l.out_channels = out_channels;
  l.batch_norm = true;
  l.activation = Activation::Relu;
  return l;
}

long long layer_params(const LayerSpec& l, int in_channels) {
  long long n = static_cast<long long>(l.kernel) * l.kernel * in_channels * l.out_channels + l.out_channels;
  if (l.batch_norm) n += 2LL * l.out_channels;
  return n;
}

LayerParams allocate(const LayerSpec& l, int in_channels) {
  LayerParams p;
  if (l.kind == LayerKind::UpConv)
    p.weight = Tensor(in_channels, l.out_channels, l.kernel, l.kernel);
  else
    p.weight = Tensor(l.out_channels, in_channels, l.kernel, l.kernel);
  p.bias = Tensor(std::vector<int>{l.out_channels});
  if (l.batch_norm) {
    p.bn_scale = Tensor(std::vector<int>{l.out_channels}, 1.0f);
    p.bn_shift = Tensor(std::vector<int>{l.out_channels});
  }
  return p;
}

template <typename Fn>
void visit_layers(const NetworkSpec& spec, Fn&& fn) {
  int in = 1;
  for (int i = 0; i < spec.levels(); ++i) {
    fn("enc" + std::to_string(i + 1), spec.encoder[static_cast<std::size_t>(i)], in, 'e', i);
    in = spec.encoder[static_cast<std::size_t>(i)].out_channels;
  }
  for (int j = 0; j < spec.levels(); ++j) {
    const auto& b = spec.bottleneck[static_cast<std::size_t>(j)];
    if (b) fn("dec" + std::to_string(j + 1) + ".squeeze", *b, spec.concat_channels(j), 'b', j);
    fn("dec" + std::to_string(j + 1), spec.decoder[static_cast<std::size_t>(j)], spec.decoder_input_channels(j), 'd', j);
  }
}

Tensor activate(const Tensor& z, Activation a) {
  switch (a) {
    case Activation::None:
      return z;
    case Activation::Relu:
      return nn::leaky_relu(z, 0.0);
    case Activation::LeakyRelu:
      return nn::leaky_relu(z, kLeakySlope);
  }
  return z;
}

Tensor block_forward(const LayerSpec& spec, const LayerParams& p, const Tensor& x, bool training, std::uint64_t seed,
                     BlockTrace* trace) {
  Tensor z = spec.kind == LayerKind::UpConv ? nn::upconv2d(x, p.weight, p.bias, spec.stride)
                                            : nn::conv2d(x, p.weight, p.bias, spec.stride);
  if (spec.batch_norm) z = nn::batchnorm(z, p.bn_scale, p.bn_shift, trace ? &trace->bn : nullptr);
  Tensor a = activate(z, spec.activation);
  if (trace) {
    trace->input = x;
    trace->pre_activation = std::move(z);
  }
  if (spec.dropout > 0.0 && training) return nn::dropout(a, spec.dropout, true, seed, trace ? &trace->mask : nullptr);
  return a;
}

Tensor block_backward(const LayerSpec& spec, const LayerParams& p, const BlockTrace& trace, Tensor d,
                      LayerParams& grads) {
  if (!trace.mask.empty())
    for (std::size_t i = 0; i < d.size(); ++i) d[i] *= trace.mask[i];
  if (spec.activation != Activation::None)
    d = nn::leaky_relu_backward(trace.pre_activation, d, spec.activation == Activation::LeakyRelu ? kLeakySlope : 0.0);
  if (spec.batch_norm) {
    auto g = nn::batchnorm_backward(d, p.bn_scale, trace.bn);
    grads.bn_scale = std::move(g.dscale);
    grads.bn_shift = std::move(g.dshift);
    d = std::move(g.dx);
  }
  auto g = spec.kind == LayerKind::UpConv ? nn::upconv2d_backward(trace.input, p.weight, spec.stride, d)
                                          : nn::conv2d_backward(trace.input, p.weight, spec.stride, d);
  grads.weight = std::move(g.dweight);
  grads.bias = std::move(g.dbias);
  return std::move(g.dx);
}

void accumulate(Tensor& dst, const Tensor& src) {
  if (dst.empty()) {
    dst = src;
    return;
  }
  for (std::size_t i = 0; i < dst.size(); ++i) dst[i] += src[i];
}

}  // namespace

int NetworkSpec::concat_channels(int j) const {
  const auto ju = static_cast<std::size_t>(j);
  if (j <= 0) return encoder.back().out_channels;
  if (shortcut[ju] < 0) return decoder[ju - 1].out_channels;
  return decoder[ju - 1].out_channels + encoder[static_cast<std::size_t>(shortcut[ju])].out_channels;
}

int NetworkSpec::decoder_input_channels(int j) const {
  const auto ju = static_cast<std::size_t>(j);
  if (j == 0) return encoder.back().out_channels;
  if (bottleneck[ju]) return bottleneck[ju]->out_channels;
  return concat_channels(j);
}

NetworkSpec build_network(int k, Profile profile, bool bottlenecks) {
  if (k < 2) throw InvalidArgument("k must be at least 2 (background plus one part), got " + std::to_string(k));
  NetworkSpec spec;
  spec.k = k;
  std::vector<int> enc_channels;
  if (profile == Profile::Canonical) {
    spec.input_side = 256;
    enc_channels = {32, 64, 128, 256, 256, 256, 512};
  } else {
    spec.input_side = 64;
    enc_channels = {32, 64, 128, 256, 512};
  }
  const int levels = static_cast<int>(enc_channels.size());
  for (int i = 0; i < levels; ++i) spec.encoder.push_back(encoder_layer(i, enc_channels[static_cast<std::size_t>(i)]));
  for (int j = 0; j < levels; ++j) {
    const int out = j == levels - 1 ? k : enc_channels[static_cast<std::size_t>(levels - 2 - j)];
    spec.decoder.push_back(decoder_layer(j, levels, out));
    spec.shortcut.push_back(j == 0 ? -1 : levels - 1 - j);
    spec.bottleneck.emplace_back();
  }
  if (bottlenecks)
    for (int j = 1; j < levels; ++j) spec.bottleneck[static_cast<std::size_t>(j)] = bottleneck_layer(spec.concat_channels(j) / 2);
  validate_spec(spec);
  return spec;
}

void validate_spec(const NetworkSpec& spec) {
  const int levels = spec.levels();
  if (spec.k < 2) throw InvalidArgument("network k must be at least 2");
  if (levels < 1 || static_cast<int>(spec.decoder.size()) != levels ||
      static_cast<int>(spec.bottleneck.size()) != levels || static_cast<int>(spec.shortcut.size()) != levels)
    throw InvalidArgument("encoder, decoder, bottleneck and shortcut tables must have equal length");
  if (spec.input_side <= 0 || spec.input_side % (1 << levels) != 0)
    throw InvalidArgument("input side " + std::to_string(spec.input_side) + " is not divisible by 2^" +
                          std::to_string(levels));
  for (const auto& l : spec.encoder)
    if (l.kind != LayerKind::Conv || l.stride != 2 || l.out_channels <= 0)
      throw InvalidArgument("encoder layers must be stride-2 convolutions");
  for (const auto& l : spec.decoder)
    if (l.kind != LayerKind::UpConv || l.stride != 2 || l.out_channels <= 0)
      throw InvalidArgument("decoder layers must be stride-2 up-convolutions");
  if (spec.decoder.back().out_channels != spec.k) throw InvalidArgument("last decoder layer must emit k channels");
  if (spec.shortcut[0] != -1 || spec.bottleneck[0]) throw InvalidArgument("first decoder layer takes no shortcut");
  for (int j = 1; j < levels; ++j) {
    const int s = spec.shortcut[static_cast<std::size_t>(j)];
    if (s != -1 && s != levels - 1 - j) throw InvalidArgument("shortcuts must connect mirrored levels");
    const auto& b = spec.bottleneck[static_cast<std::size_t>(j)];
    if (b && (b->kind != LayerKind::Bottleneck || b->kernel != 1 || b->stride != 1))
      throw InvalidArgument("bottleneck layers must be 1x1 stride-1 convolutions");
  }
}

ParameterCount count_parameters(const NetworkSpec& spec) {
  ParameterCount c;
  visit_layers(spec, [&](const std::string&, const LayerSpec& l, int in, char section, int) {
    const long long n = layer_params(l, in);
    const long long w = static_cast<long long>(l.kernel) * l.kernel * in * l.out_channels;
    if (section == 'e')
      c.encoder_weights += w;
    else
      c.decoder_weights += w;
    if (section == 'e')
      c.encoder += n;
    else if (section == 'b')
      c.bottlenecks += n;
    else
      c.decoder_layers += n;
  });
  return c;
}

Model Model::zeros(const NetworkSpec& spec, std::string category, std::vector<std::string> label_names) {
  validate_spec(spec);
  if (static_cast<int>(label_names.size()) != spec.k)
    throw InvalidArgument("model has " + std::to_string(label_names.size()) + " label names for k = " +
                          std::to_string(spec.k));
  Model m;
  m.spec = spec;
  m.category = std::move(category);
  m.label_names = std::move(label_names);
  m.bottleneck.resize(static_cast<std::size_t>(spec.levels()));
  visit_layers(spec, [&](const std::string&, const LayerSpec& l, int in, char section, int idx) {
    auto p = allocate(l, in);
    if (section == 'e')
      m.encoder.push_back(std::move(p));
    else if (section == 'b')
      m.bottleneck[static_cast<std::size_t>(idx)] = std::move(p);
    else
      m.decoder.push_back(std::move(p));
  });
  for (auto& p : m.encoder) p.bn_scale.fill(0.0f);
  for (auto& p : m.bottleneck) p.bn_scale.fill(0.0f);
  for (auto& p : m.decoder) p.bn_scale.fill(0.0f);
  return m;
}

Model Model::initialize(const NetworkSpec& spec, std::string category, std::vector<std::string> label_names,
                        std::uint64_t seed) {
  Model m = zeros(spec, std::move(category), std::move(label_names));
  std::mt19937_64 rng(seed);
  auto init = [&](LayerParams& p, const LayerSpec& l, int in) {
    if (p.weight.empty()) return;
    double fan_in = static_cast<double>(in) * l.kernel * l.kernel;
    if (l.kind == LayerKind::UpConv) fan_in /= static_cast<double>(l.stride) * l.stride;
    std::normal_distribution<float> dist(0.0f, static_cast<float>(std::sqrt(2.0 / fan_in)));
    for (auto& w : p.weight.values()) w = dist(rng);
    p.bias.fill(0.0f);
    if (!p.bn_scale.empty()) {
      p.bn_scale.fill(1.0f);
      p.bn_shift.fill(0.0f);
    }
  };
  visit_layers(spec, [&](const std::string&, const LayerSpec& l, int in, char section, int idx) {
    auto i = static_cast<std::size_t>(idx);
    init(section == 'e' ? m.encoder[i] : section == 'b' ? m.bottleneck[i] : m.decoder[i], l, in);
  });
  return m;
}

void Model::for_each_param(const std::function<void(const std::string&, Tensor&)>& fn) {
  auto visit = [&](const std::string& name, LayerParams& p) {
    if (p.weight.empty()) return;
    fn(name + ".weight", p.weight);
    fn(name + ".bias", p.bias);
    if (!p.bn_scale.empty()) {
      fn(name + ".bn.scale", p.bn_scale);
      fn(name + ".bn.shift", p.bn_shift);
    }
  };
  for (std::size_t i = 0; i < encoder.size(); ++i) visit("enc" + std::to_string(i + 1), encoder[i]);
  for (std::size_t j = 0; j < decoder.size(); ++j) {
    if (j < bottleneck.size()) visit("dec" + std::to_string(j + 1) + ".squeeze", bottleneck[j]);
    visit("dec" + std::to_string(j + 1), decoder[j]);
  }
}

void Model::for_each_param(const std::function<void(const std::string&, const Tensor&)>& fn) const {
  const_cast<Model*>(this)->for_each_param([&](const std::string& name, Tensor& t) { fn(name, t); });
}

long long Model::parameter_count() const {
  long long n = 0;
  for_each_param([&](const std::string&, const Tensor& t) { n += static_cast<long long>(t.size()); });
  return n;
}

Tensor forward(const Model& model, const Tensor& x, bool training, std::uint64_t dropout_seed, ForwardTrace* trace) {
  const auto& spec = model.spec;
  const int levels = spec.levels();
  if (x.rank() != 4 || x.c() != 1 || x.h() != spec.input_side || x.w() != spec.input_side)
    throw ShapeError("network input " + shape_string(x.shape()) + " does not match (N x 1 x " +
                     std::to_string(spec.input_side) + " x " + std::to_string(spec.input_side) + ")");
  if (trace) {
    trace->encoder.assign(static_cast<std::size_t>(levels), {});
    trace->bottleneck.assign(static_cast<std::size_t>(levels), {});
    trace->decoder.assign(static_cast<std::size_t>(levels), {});
  }

  std::vector<Tensor> enc_out(static_cast<std::size_t>(levels));
  const Tensor* h = &x;
  for (int i = 0; i < levels; ++i) {
    const auto iu = static_cast<std::size_t>(i);
    enc_out[iu] = block_forward(spec.encoder[iu], model.encoder[iu], *h, training, block_seed(dropout_seed, i),
                                trace ? &trace->encoder[iu] : nullptr);
    h = &enc_out[iu];
  }

  Tensor cur = enc_out.back();
  for (int j = 0; j < levels; ++j) {
    const auto ju = static_cast<std::size_t>(j);
    if (j > 0) {
      if (spec.shortcut[ju] >= 0) cur = nn::concat_channels(cur, enc_out[static_cast<std::size_t>(spec.shortcut[ju])]);
      if (spec.bottleneck[ju])
        cur = block_forward(*spec.bottleneck[ju], model.bottleneck[ju], cur, training,
                            block_seed(dropout_seed, 2 * levels + j), trace ? &trace->bottleneck[ju] : nullptr);
    }
    cur = block_forward(spec.decoder[ju], model.decoder[ju], cur, training, block_seed(dropout_seed, levels + j),
                        trace ? &trace->decoder[ju] : nullptr);
  }
  return cur;
}

Model backward(const Model& model, const ForwardTrace& trace, const Tensor& dlogits) {
  const auto& spec = model.spec;
  const int levels = spec.levels();
  Model grads;
  grads.spec = spec;
  grads.encoder.resize(static_cast<std::size_t>(levels));
  grads.bottleneck.resize(static_cast<std::size_t>(levels));
  grads.decoder.resize(static_cast<std::size_t>(levels));

  std::vector<Tensor> d_enc(static_cast<std::size_t>(levels));
  Tensor d = dlogits;
  for (int j = levels - 1; j >= 0; --j) {
    const auto ju = static_cast<std::size_t>(j);
    d = block_backward(spec.decoder[ju], model.decoder[ju], trace.decoder[ju], std::move(d), grads.decoder[ju]);
    if (j == 0) break;
    if (spec.bottleneck[ju])
      d = block_backward(*spec.bottleneck[ju], model.bottleneck[ju], trace.bottleneck[ju], std::move(d),
                         grads.bottleneck[ju]);
    if (spec.shortcut[ju] >= 0) {
      auto [d_prev, d_skip] = nn::split_channels(d, spec.decoder[ju - 1].out_channels);
      accumulate(d_enc[static_cast<std::size_t>(spec.shortcut[ju])], d_skip);
      d = std::move(d_prev);
    }
  }
  accumulate(d_enc.back(), d);

  for (int i = levels - 1; i >= 0; --i) {
    const auto iu = static_cast<std::size_t>(i);
    Tensor dx = block_backward(spec.encoder[iu], model.encoder[iu], trace.encoder[iu], std::move(d_enc[iu]),
                               grads.encoder[iu]);
    if (i > 0) accumulate(d_enc[iu - 1], dx);
  }
  return grads;
}

Tensor encode(const Model& model, const Tensor& x) {
  const auto& spec = model.spec;
  if (x.rank() != 4 || x.c() != 1 || x.h() != spec.input_side || x.w() != spec.input_side)
    throw ShapeError("encoder input " + shape_string(x.shape()) + " does not match side " +
                     std::to_string(spec.input_side));
  Tensor h = x;
  for (std::size_t i = 0; i < spec.encoder.size(); ++i)
    h = block_forward(spec.encoder[i], model.encoder[i], h, false, 0, nullptr);
  return h;
}

Tensor images_to_tensor(std::span<const RasterImage> images, int side) {
  Tensor x(static_cast<int>(images.size()), 1, side, side);
  for (std::size_t n = 0; n < images.size(); ++n) {
    const auto& img = images[n];
    if (img.width != side || img.height != side)
      throw ShapeError("image " + std::to_string(n) + " is " + std::to_string(img.width) + "x" +
                       std::to_string(img.height) + ", expected " + std::to_string(side) + "x" + std::to_string(side));
    float* dst = x.data() + x.offset(static_cast<int>(n), 0, 0, 0);
    for (std::size_t i = 0; i < img.values.size(); ++i) dst[i] = img.values[i] ? 1.0f : 0.0f;
  }
  return x;
}

std::vector<SegMap> infer_batch(const Model& model, std::span<const RasterImage> images) {
  if (images.empty()) throw InvalidArgument("inference batch is empty");
  const int side = model.spec.input_side;
  Tensor logits = forward(model, images_to_tensor(images, side), false, 0);
  std::vector<SegMap> out;
  out.reserve(images.size());
  const std::size_t per = static_cast<std::size_t>(model.spec.k) * side * side;
  for (std::size_t n = 0; n < images.size(); ++n) {
    SegMap m(model.spec.k, side);
    std::copy_n(logits.data() + n * per, per, m.scores.begin());
    out.push_back(std::move(m));
  }
  return out;
}

std::vector<float> extract_features(const Model& model, const RasterImage& image) {
  const Tensor f = encode(model, images_to_tensor(std::span<const RasterImage>(&image, 1), model.spec.input_side));
  std::vector<float> v;
  v.reserve(f.size());
  for (int y = 0; y < f.h(); ++y)
    for (int x = 0; x < f.w(); ++x)
      for (int c = 0; c < f.c(); ++c) v.push_back(f(0, c, y, x));
  return v;
}

}  // namespace sketchseg
