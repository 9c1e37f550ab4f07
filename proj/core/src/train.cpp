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

#include "sketchseg/train.hpp"

#include <algorithm>

#include "sketchseg/errors.hpp"

namespace sketchseg {

namespace {

void validate_dataset(std::span<const EdgeMapSample> dataset, const NetworkSpec& spec) {
  if (dataset.empty()) throw InvalidArgument("training dataset is empty");
  const std::size_t pixels = static_cast<std::size_t>(spec.input_side) * spec.input_side;
  for (std::size_t i = 0; i < dataset.size(); ++i) {
    const auto& s = dataset[i];
    if (s.side != spec.input_side || s.image.size() != pixels || s.labels.size() != pixels)
      throw ShapeError("sample " + std::to_string(i) + " is not " + std::to_string(spec.input_side) + "x" +
                       std::to_string(spec.input_side));
    for (int l : s.labels)
      if (l < 0 || l >= spec.k)
        throw InvalidArgument("sample " + std::to_string(i) + " has label " + std::to_string(l) + " >= k = " +
                              std::to_string(spec.k));
  }
}

}  // namespace

Trainer::Trainer(Model model, std::span<const EdgeMapSample> dataset, TrainConfig config)
    : model_(std::move(model)), dataset_(dataset), config_(config), rng_(config.seed) {
  validate_dataset(dataset_, model_.spec);
  if (config_.batch < 1) throw InvalidArgument("batch size must be positive");
  model_.for_each_param([&](const std::string&, Tensor& t) { optimizer_.emplace_back(t.size()); });
}

double Trainer::step() {
  const int side = model_.spec.input_side;
  const std::size_t pixels = static_cast<std::size_t>(side) * side;
  std::uniform_int_distribution<std::size_t> pick(0, dataset_.size() - 1);

  Tensor x(config_.batch, 1, side, side);
  std::vector<int> target(pixels * static_cast<std::size_t>(config_.batch));
  for (int n = 0; n < config_.batch; ++n) {
    const auto& s = dataset_[pick(rng_)];
    float* dst = x.data() + x.offset(n, 0, 0, 0);
    for (std::size_t i = 0; i < pixels; ++i) dst[i] = s.image[i] ? 1.0f : 0.0f;
    std::copy(s.labels.begin(), s.labels.end(), target.begin() + static_cast<std::ptrdiff_t>(pixels * n));
  }
  const std::uint64_t dropout_seed = rng_();

  ForwardTrace trace;
  const Tensor logits = forward(model_, x, true, dropout_seed, &trace);
  auto loss = nn::softmax_cross_entropy(logits, target);
  Model grads = backward(model_, trace, loss.grad);

  std::vector<Tensor*> grad_tensors;
  grads.for_each_param([&](const std::string&, Tensor& t) { grad_tensors.push_back(&t); });
  std::size_t i = 0;
  model_.for_each_param([&](const std::string&, Tensor& t) {
    nn::adam_step(t.values(), grad_tensors[i]->values(), optimizer_[i], config_.adam);
    ++i;
  });
  ++step_;
  return loss.loss;
}

TrainResult train(std::span<const EdgeMapSample> dataset, const NetworkSpec& spec, std::string category,
                  std::vector<std::string> label_names, const TrainConfig& cfg,
                  const std::function<void(const LossPoint&)>& on_log) {
  validate_dataset(dataset, spec);
  Model init = Model::initialize(spec, std::move(category), std::move(label_names), cfg.seed ^ 0x5EEDull);
  Trainer trainer(std::move(init), dataset, cfg);
  TrainResult result;
  const long every = std::max(1, cfg.log_every);
  for (long s = 1; s <= cfg.steps; ++s) {
    const double loss = trainer.step();
    if (s == 1 || s % every == 0) {
      result.trace.push_back({s, loss});
      if (on_log) on_log(result.trace.back());
    }
  }
  result.model = std::move(trainer).release();
  return result;
}

}  // namespace sketchseg
