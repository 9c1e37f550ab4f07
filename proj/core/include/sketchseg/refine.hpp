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
#include <vector>

#include "sketchseg/sketch.hpp"

namespace sketchseg {

/// One chain per stroke; edges join consecutive nodes of a chain only.
struct ChainGraph {
  struct Chain {
    std::vector<int> queried;      // network label per node, in [1, label_count]
    std::vector<float> scores;     // optional: nodes x k raw scores, unused by the solvers
  };
  std::vector<Chain> chains;
  int label_count = 0;  // part labels, background excluded; valid labels are 1..label_count

  std::size_t node_count() const noexcept;
  std::size_t edge_count() const noexcept;
};

struct EnergyParams {
  double c_d = 1.0;   // data cost for disagreeing with the queried label
  double c_s = 88.0;  // smoothness cost for a label change along a chain
};

/// Flat labeling, chains concatenated in order.
struct Labeling {
  std::vector<int> labels;
  double energy = 0.0;
};

ChainGraph build_chain_graph(const Sketch& sketch, std::span<const StrokeSamples> samples, int label_count);
ChainGraph build_chain_graph(const Sketch& sketch, const std::vector<std::vector<int>>& point_labels,
                             int label_count);

/// Sum of data and Potts smoothness terms.
double energy(std::span<const int> labels, const ChainGraph& graph, const EnergyParams& params);

/// The queried labels as a labeling.
Labeling queried_labeling(const ChainGraph& graph, const EnergyParams& params);

/// Exact minimizer, solved per chain by dynamic programming in O(n * labels).
/// Among optimal labelings it returns the lexicographically smallest.
Labeling refine_dp(const ChainGraph& graph, const EnergyParams& params);

struct ExpansionResult {
  Labeling labeling;
  std::vector<double> energy_trace;  // initial energy, then after every accepted move
  int cycles = 0;
};

/// Alpha-expansion from the queried labels. Each binary move is solved by
/// min-cut; label order is fixed for the whole run (a seeded permutation,
/// identity for seed 0). Stops after a full cycle without improvement.
ExpansionResult refine_alpha_expansion(const ChainGraph& graph, const EnergyParams& params, std::uint64_t seed = 0);

inline constexpr std::size_t kBruteForceMaxNodes = 12;
inline constexpr int kBruteForceMaxLabels = 4;

/// Exhaustive search; returns the lexicographically first minimum.
Labeling brute_force_refine(const ChainGraph& graph, const EnergyParams& params);

/// Splits a flat labeling back into per-chain sequences.
std::vector<std::vector<int>> split_by_chain(const ChainGraph& graph, std::span<const int> labels);

}  // namespace sketchseg
