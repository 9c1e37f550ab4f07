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
#include <random>
#include <span>
#include <vector>

#include "sketchseg/network.hpp"
#include "sketchseg/nn.hpp"
#include "sketchseg/sample.hpp"

namespace sketchseg {

struct TrainConfig {
  nn::AdamConfig adam;  // lr 1e-4, beta1 0.9, beta2 0.999
  int batch = 32;
  long steps = 80000;
  std::uint64_t seed = 0;
  int log_every = 100;
};

struct LossPoint {
  long step = 0;
  double loss = 0.0;

  friend bool operator==(const LossPoint&, const LossPoint&) = default;
};

/// Owns a model and its optimizer state; `dataset` must outlive the trainer.
class Trainer {
 public:
  Trainer(Model model, std::span<const EdgeMapSample> dataset, TrainConfig config);

  /// Samples a batch uniformly with replacement, runs forward (dropout on,
  /// batch statistics), the summed cross-entropy, backward and one Adam update.
  /// Returns the batch loss.
  double step();

  long steps_done() const noexcept { return step_; }
  const Model& model() const noexcept { return model_; }
  Model release() && { return std::move(model_); }

 private:
  Model model_;
  std::span<const EdgeMapSample> dataset_;
  TrainConfig config_;
  std::mt19937_64 rng_;
  std::vector<nn::AdamState> optimizer_;
  long step_ = 0;
};

struct TrainResult {
  Model model;
  std::vector<LossPoint> trace;  // step 1 and every `log_every` steps
};

/// Validates the dataset, initializes a model from `cfg.seed` and runs `cfg.steps` updates.
TrainResult train(std::span<const EdgeMapSample> dataset, const NetworkSpec& spec, std::string category,
                  std::vector<std::string> label_names, const TrainConfig& cfg,
                  const std::function<void(const LossPoint&)>& on_log = {});

}  // namespace sketchseg
