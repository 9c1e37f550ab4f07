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

#include <vector>

namespace sketchseg {

/// Dinic max-flow on a small directed graph with real capacities.
class MaxFlow {
 public:
  explicit MaxFlow(int nodes);

  void add_edge(int from, int to, double capacity);
  double solve(int source, int sink);
  /// After solve(): true for nodes reachable from the source in the residual graph.
  bool source_side(int node) const { return reach_[static_cast<std::size_t>(node)]; }

 private:
  struct Edge {
    int to;
    int rev;
    double cap;
  };
  bool bfs(int s, int t);
  double dfs(int v, int t, double f);

  std::vector<std::vector<Edge>> adj_;
  std::vector<int> level_;
  std::vector<std::size_t> it_;
  std::vector<bool> reach_;
};

}  // namespace sketchseg
