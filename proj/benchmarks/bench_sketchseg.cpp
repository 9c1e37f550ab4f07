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

#include <benchmark/benchmark.h>

#include <random>

#include "sketchseg/canny.hpp"
#include "sketchseg/network.hpp"
#include "sketchseg/nn.hpp"
#include "sketchseg/pipeline.hpp"
#include "sketchseg/refine.hpp"
#include "sketchseg/synth.hpp"

using namespace sketchseg;

namespace {

Tensor random_tensor(std::vector<int> shape, std::uint64_t seed) {
  Tensor t(std::move(shape));
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<float> u(-1.0f, 1.0f);
  for (std::size_t i = 0; i < t.size(); ++i) t[i] = u(rng);
  return t;
}

void BM_Conv2d(benchmark::State& state) {
  const int side = static_cast<int>(state.range(0)), c = static_cast<int>(state.range(1));
  const Tensor x = random_tensor({1, c, side, side}, 1);
  const Tensor w = random_tensor({2 * c, c, 4, 4}, 2);
  const Tensor b = random_tensor({2 * c}, 3);
  for (auto _ : state) benchmark::DoNotOptimize(nn::conv2d(x, w, b, 2));
}
BENCHMARK(BM_Conv2d)->Args({128, 32})->Args({32, 128})->Args({8, 256})->Unit(benchmark::kMillisecond);

void BM_Upconv2d(benchmark::State& state) {
  const int side = static_cast<int>(state.range(0)), c = static_cast<int>(state.range(1));
  const Tensor x = random_tensor({1, c, side, side}, 1);
  const Tensor w = random_tensor({c, c / 2, 4, 4}, 2);
  const Tensor b = random_tensor({c / 2}, 3);
  for (auto _ : state) benchmark::DoNotOptimize(nn::upconv2d(x, w, b, 2));
}
BENCHMARK(BM_Upconv2d)->Args({64, 64})->Args({8, 512})->Unit(benchmark::kMillisecond);

void BM_Infer(benchmark::State& state) {
  const auto profile = state.range(0) == 0 ? Profile::Canonical : Profile::Reduced;
  const auto cat = synth_category("lamp");
  const Model model = Model::initialize(build_network(4, profile), "lamp", cat.label_names(), 1);
  const Sketch sk = synth_sketch_dataset(cat, 1, 1, 64)[0].sketch;
  SegmentOptions opt;
  for (auto _ : state) benchmark::DoNotOptimize(segment_sketch(sk, model, opt));
}
BENCHMARK(BM_Infer)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_RefineDp(benchmark::State& state) {
  std::mt19937_64 rng(4);
  ChainGraph g;
  g.label_count = 4;
  for (int c = 0; c < 20; ++c) {
    ChainGraph::Chain ch;
    for (int i = 0; i < state.range(0) / 20; ++i) ch.queried.push_back(1 + static_cast<int>(rng() % 4));
    g.chains.push_back(ch);
  }
  for (auto _ : state) benchmark::DoNotOptimize(refine_dp(g, {}));
  state.SetItemsProcessed(state.iterations() * static_cast<long>(g.node_count()));
}
BENCHMARK(BM_RefineDp)->Arg(200)->Arg(2000)->Arg(20000);

void BM_AlphaExpansion(benchmark::State& state) {
  std::mt19937_64 rng(5);
  ChainGraph g;
  g.label_count = 4;
  for (int c = 0; c < 20; ++c) {
    ChainGraph::Chain ch;
    for (int i = 0; i < state.range(0) / 20; ++i) ch.queried.push_back(1 + static_cast<int>(rng() % 4));
    g.chains.push_back(ch);
  }
  for (auto _ : state) benchmark::DoNotOptimize(refine_alpha_expansion(g, {}));
}
BENCHMARK(BM_AlphaExpansion)->Arg(200)->Arg(2000)->Unit(benchmark::kMillisecond);

void BM_Canny(benchmark::State& state) {
  const int side = static_cast<int>(state.range(0));
  std::vector<float> img(3 * static_cast<std::size_t>(side) * side);
  std::mt19937_64 rng(6);
  std::uniform_real_distribution<float> u(0.0f, 1.0f);
  for (auto& v : img) v = u(rng);
  for (auto _ : state) benchmark::DoNotOptimize(canny(img, 3, side, side));
}
BENCHMARK(BM_Canny)->Arg(64)->Arg(256)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
