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

#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"
#include "sketchseg/errors.hpp"
#include "sketchseg/maxflow.hpp"
#include "sketchseg/refine.hpp"

using namespace sketchseg;

namespace {

ChainGraph random_graph(std::mt19937_64& rng, int max_nodes, int labels) {
  std::uniform_int_distribution<int> chains_d(1, 3), lab(1, labels);
  ChainGraph g;
  g.label_count = labels;
  int budget = max_nodes;
  const int chains = chains_d(rng);
  for (int c = 0; c < chains && budget > 0; ++c) {
    const int len = std::uniform_int_distribution<int>(1, std::max(1, budget - (chains - c - 1)))(rng);
    ChainGraph::Chain ch;
    for (int i = 0; i < len; ++i) ch.queried.push_back(lab(rng));
    g.chains.push_back(ch);
    budget -= len;
  }
  return g;
}

std::vector<std::vector<int>> queried_of(const ChainGraph& g) {
  std::vector<std::vector<int>> q;
  for (const auto& c : g.chains) q.push_back(c.queried);
  return q;
}

}  // namespace

TEST(ChainGraph, CountsNodesAndEdges) {
  ChainGraph g;
  g.label_count = 2;
  g.chains = {{{1, 2, 1}, {}}, {{2}, {}}, {{1, 1}, {}}};
  EXPECT_EQ(g.node_count(), 6u);
  EXPECT_EQ(g.edge_count(), 3u);
}

TEST(ChainGraph, BuildsFromPointLabels) {
  Sketch s;
  s.strokes = {{{{0, 0}, {1, 1}, {2, 2}}, {}}, {{{5, 5}}, {}}};
  const ChainGraph g = build_chain_graph(s, {{1, 2, 2}, {3}}, 3);
  ASSERT_EQ(g.chains.size(), 2u);
  EXPECT_EQ(g.chains[0].queried, (std::vector<int>{1, 2, 2}));
  EXPECT_EQ(g.chains[1].queried, (std::vector<int>{3}));
  EXPECT_THROW(build_chain_graph(s, {{1, 2}, {3}}, 3), InvalidArgument);
  EXPECT_THROW(build_chain_graph(s, {{1, 2, 2}}, 3), InvalidArgument);
}

TEST(Energy, MatchesHandComputation) {
  ChainGraph g;
  g.label_count = 3;
  g.chains = {{{1, 1, 2}, {}}, {{3, 3}, {}}};
  const EnergyParams p{2.0, 5.0};
  const std::vector<int> labels{1, 2, 2, 3, 1};
  // disagreements: node 1 (1->2) and node 4 (3->1); changes: 1|2 in chain 0, 3|1 in chain 1
  EXPECT_DOUBLE_EQ(energy(labels, g, p), 2 * 2.0 + 2 * 5.0);
  EXPECT_DOUBLE_EQ(energy(labels, g, p), oracle::chain_energy(queried_of(g), split_by_chain(g, labels), 2.0, 5.0));
  EXPECT_THROW(energy(std::vector<int>{1, 2}, g, p), InvalidArgument);
  EXPECT_THROW(refine_dp(g, EnergyParams{-1.0, 1.0}), InvalidArgument);
}

TEST(Energy, RejectsQueriedLabelsOutOfRange) {
  ChainGraph g;
  g.label_count = 2;
  g.chains = {{{1, 3}, {}}};
  EXPECT_THROW(refine_dp(g, {}), InvalidArgument);
  g.chains = {{{0}, {}}};
  EXPECT_THROW(refine_dp(g, {}), InvalidArgument);
}

TEST(RefineDp, MatchesExhaustiveOracle) {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> cost(0.0, 3.0);
  for (int trial = 0; trial < 300; ++trial) {
    const int labels = 1 + trial % 4;
    const ChainGraph g = random_graph(rng, 8, labels);
    const EnergyParams p{cost(rng), cost(rng)};
    const Labeling dp = refine_dp(g, p);
    const double best = oracle::brute_force_minimum(queried_of(g), labels, p.c_d, p.c_s);
    ASSERT_NEAR(dp.energy, best, 1e-9) << "trial " << trial;
    ASSERT_NEAR(energy(dp.labels, g, p), dp.energy, 1e-9);
  }
}

TEST(RefineDp, AgreesWithLibraryBruteForceIncludingTieBreak) {
  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 200; ++trial) {
    const ChainGraph g = random_graph(rng, 10, 3);
    const EnergyParams p{1.0, static_cast<double>(trial % 4)};
    EXPECT_EQ(refine_dp(g, p).labels, brute_force_refine(g, p).labels) << "trial " << trial;
  }
}

TEST(RefineDp, LargeSmoothnessFlattensEachChain) {
  ChainGraph g;
  g.label_count = 3;
  g.chains = {{{1, 1, 2, 1, 1, 3, 1}, {}}, {{2, 2, 1}, {}}};
  const Labeling r = refine_dp(g, {1.0, 88.0});
  EXPECT_EQ(r.labels, (std::vector<int>{1, 1, 1, 1, 1, 1, 1, 2, 2, 2}));
  EXPECT_DOUBLE_EQ(r.energy, 3.0);
}

TEST(RefineDp, ZeroSmoothnessKeepsQueriedLabels) {
  std::mt19937_64 rng(9);
  const ChainGraph g = random_graph(rng, 30, 4);
  const Labeling r = refine_dp(g, {1.0, 0.0});
  EXPECT_EQ(r.labels, queried_labeling(g, {1.0, 0.0}).labels);
  EXPECT_EQ(r.energy, 0.0);
}

TEST(RefineDp, NeverExceedsQueriedEnergy) {
  std::mt19937_64 rng(10);
  for (int trial = 0; trial < 100; ++trial) {
    const ChainGraph g = random_graph(rng, 200, 6);
    const EnergyParams p{1.0, 88.0};
    EXPECT_LE(refine_dp(g, p).energy, queried_labeling(g, p).energy);
  }
}

TEST(BruteForce, RefusesLargeInstances) {
  ChainGraph g;
  g.label_count = 2;
  g.chains = {{std::vector<int>(kBruteForceMaxNodes + 1, 1), {}}};
  EXPECT_THROW(brute_force_refine(g, {}), InvalidArgument);
}

TEST(MaxFlow, SolvesTextbookNetwork) {
  MaxFlow f(6);
  f.add_edge(0, 1, 16);
  f.add_edge(0, 2, 13);
  f.add_edge(1, 2, 10);
  f.add_edge(2, 1, 4);
  f.add_edge(1, 3, 12);
  f.add_edge(3, 2, 9);
  f.add_edge(2, 4, 14);
  f.add_edge(4, 3, 7);
  f.add_edge(3, 5, 20);
  f.add_edge(4, 5, 4);
  EXPECT_DOUBLE_EQ(f.solve(0, 5), 23.0);
  EXPECT_TRUE(f.source_side(0));
  EXPECT_FALSE(f.source_side(5));
}

TEST(MaxFlow, MinCutEqualsFlowOnRandomGraphs) {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> cap(0.0, 5.0);
  for (int trial = 0; trial < 50; ++trial) {
    const int n = 8;
    std::vector<std::tuple<int, int, double>> edges;
    MaxFlow f(n);
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b)
        if (a != b && rng() % 3 == 0) {
          const double c = cap(rng);
          edges.emplace_back(a, b, c);
          f.add_edge(a, b, c);
        }
    const double flow = f.solve(0, n - 1);
    double cut = 0.0;
    for (const auto& [a, b, c] : edges)
      if (f.source_side(a) && !f.source_side(b)) cut += c;
    EXPECT_NEAR(flow, cut, 1e-9);
    EXPECT_FALSE(f.source_side(n - 1));
  }
}

TEST(AlphaExpansion, StaysWithinFactorTwoAndDescends) {
  std::mt19937_64 rng(12);
  std::uniform_real_distribution<double> cost(0.1, 4.0);
  for (int trial = 0; trial < 200; ++trial) {
    const ChainGraph g = random_graph(rng, 9, 2 + trial % 3);
    const EnergyParams p{cost(rng), cost(rng)};
    const ExpansionResult r = refine_alpha_expansion(g, p, trial);
    const double opt = refine_dp(g, p).energy;
    ASSERT_GE(r.labeling.energy, opt - 1e-9);
    ASSERT_LE(r.labeling.energy, 2.0 * opt + 1e-9);
    ASSERT_FALSE(r.energy_trace.empty());
    EXPECT_NEAR(r.energy_trace.front(), queried_labeling(g, p).energy, 1e-9);
    for (std::size_t i = 1; i < r.energy_trace.size(); ++i) ASSERT_LE(r.energy_trace[i], r.energy_trace[i - 1] + 1e-9);
    EXPECT_NEAR(r.energy_trace.back(), r.labeling.energy, 1e-9);
    EXPECT_NEAR(energy(r.labeling.labels, g, p), r.labeling.energy, 1e-9);
  }
}

TEST(AlphaExpansion, IsDeterministicPerSeed) {
  std::mt19937_64 rng(13);
  const ChainGraph g = random_graph(rng, 60, 5);
  const EnergyParams p{1.0, 3.0};
  EXPECT_EQ(refine_alpha_expansion(g, p, 4).labeling.labels, refine_alpha_expansion(g, p, 4).labeling.labels);
}

TEST(SplitByChain, InvertsConcatenation) {
  ChainGraph g;
  g.label_count = 3;
  g.chains = {{{1, 2}, {}}, {{3}, {}}, {{1, 1, 1}, {}}};
  const std::vector<int> flat{1, 2, 3, 1, 2, 3};
  EXPECT_EQ(split_by_chain(g, flat), (std::vector<std::vector<int>>{{1, 2}, {3}, {1, 2, 3}}));
}
