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

#include "sketchseg/maxflow.hpp"

#include <algorithm>
#include <limits>
#include <queue>

namespace sketchseg {

namespace {
constexpr double kEps = 1e-12;
}

MaxFlow::MaxFlow(int nodes) : adj_(static_cast<std::size_t>(nodes)) {}

void MaxFlow::add_edge(int from, int to, double capacity) {
  if (capacity <= 0.0) return;
  auto& a = adj_[static_cast<std::size_t>(from)];
  auto& b = adj_[static_cast<std::size_t>(to)];
  a.push_back({to, static_cast<int>(b.size()), capacity});
  b.push_back({from, static_cast<int>(a.size()) - 1, 0.0});
}

bool MaxFlow::bfs(int s, int t) {
  level_.assign(adj_.size(), -1);
  std::queue<int> q;
  level_[static_cast<std::size_t>(s)] = 0;
  q.push(s);
  while (!q.empty()) {
    const int v = q.front();
    q.pop();
    for (const auto& e : adj_[static_cast<std::size_t>(v)]) {
      if (e.cap > kEps && level_[static_cast<std::size_t>(e.to)] < 0) {
        level_[static_cast<std::size_t>(e.to)] = level_[static_cast<std::size_t>(v)] + 1;
        q.push(e.to);
      }
    }
  }
  return level_[static_cast<std::size_t>(t)] >= 0;
}

double MaxFlow::dfs(int v, int t, double f) {
  if (v == t) return f;
  auto& edges = adj_[static_cast<std::size_t>(v)];
  for (auto& i = it_[static_cast<std::size_t>(v)]; i < edges.size(); ++i) {
    Edge& e = edges[i];
    if (e.cap > kEps && level_[static_cast<std::size_t>(e.to)] == level_[static_cast<std::size_t>(v)] + 1) {
      const double d = dfs(e.to, t, std::min(f, e.cap));
      if (d > kEps) {
        e.cap -= d;
        adj_[static_cast<std::size_t>(e.to)][static_cast<std::size_t>(e.rev)].cap += d;
        return d;
      }
    }
  }
  return 0.0;
}

double MaxFlow::solve(int source, int sink) {
  double flow = 0.0;
  while (bfs(source, sink)) {
    it_.assign(adj_.size(), 0);
    while (true) {
      const double f = dfs(source, sink, std::numeric_limits<double>::infinity());
      if (f <= kEps) break;
      flow += f;
    }
  }
  reach_.assign(adj_.size(), false);
  std::queue<int> q;
  reach_[static_cast<std::size_t>(source)] = true;
  q.push(source);
  while (!q.empty()) {
    const int v = q.front();
    q.pop();
    for (const auto& e : adj_[static_cast<std::size_t>(v)])
      if (e.cap > kEps && !reach_[static_cast<std::size_t>(e.to)]) {
        reach_[static_cast<std::size_t>(e.to)] = true;
        q.push(e.to);
      }
  }
  return flow;
}

}  // namespace sketchseg
