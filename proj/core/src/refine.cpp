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

#include "sketchseg/refine.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>

#include "sketchseg/errors.hpp"
#include "sketchseg/maxflow.hpp"

namespace sketchseg {

namespace {

double tie_tolerance(double v) { return 1e-9 * (1.0 + std::abs(v)); }

void validate_params(const EnergyParams& p) {
  if (!(p.c_d >= 0.0) || !(p.c_s >= 0.0)) throw InvalidArgument("energy costs must be non-negative");
}

void validate_graph(const ChainGraph& g) {
  if (g.label_count < 1) throw InvalidArgument("chain graph needs at least one part label");
  for (const auto& c : g.chains)
    for (int q : c.queried)
      if (q < 1 || q > g.label_count)
        throw InvalidArgument("queried label " + std::to_string(q) + " outside [1, " + std::to_string(g.label_count) +
                              "]");
}

// One expansion move towards `alpha` solved by min-cut over all chains at once.
std::vector<int> expansion_move(const ChainGraph& graph, const std::vector<int>& cur, int alpha,
                                const EnergyParams& params) {
  const int n = static_cast<int>(cur.size());
  const int s = n, t = n + 1;
  MaxFlow flow(n + 2);
  std::vector<double> unary(static_cast<std::size_t>(n), 0.0);  // coefficient of x_p (1 = switch to alpha)

  auto potts = [&](int a, int b) { return a == b ? 0.0 : params.c_s; };
  int base = 0;
  for (const auto& chain : graph.chains) {
    const int len = static_cast<int>(chain.queried.size());
    for (int i = 0; i < len; ++i) {
      const int p = base + i;
      const int q = chain.queried[static_cast<std::size_t>(i)];
      const double u0 = cur[static_cast<std::size_t>(p)] != q ? params.c_d : 0.0;
      const double u1 = alpha != q ? params.c_d : 0.0;
      unary[static_cast<std::size_t>(p)] += u1 - u0;
      if (i + 1 < len) {
        const int r = p + 1;
        const double a = potts(cur[static_cast<std::size_t>(p)], cur[static_cast<std::size_t>(r)]);
        const double b = potts(cur[static_cast<std::size_t>(p)], alpha);
        const double c = potts(alpha, cur[static_cast<std::size_t>(r)]);
        const double d = 0.0;
        unary[static_cast<std::size_t>(p)] += c - a;
        unary[static_cast<std::size_t>(r)] += d - c;
        flow.add_edge(p, r, b + c - a - d);
      }
    }
    base += len;
  }
  for (int p = 0; p < n; ++p) {
    const double u = unary[static_cast<std::size_t>(p)];
    if (u > 0.0)
      flow.add_edge(s, p, u);
    else if (u < 0.0)
      flow.add_edge(p, t, -u);
  }
  flow.solve(s, t);

  std::vector<int> next = cur;
  for (int p = 0; p < n; ++p)
    if (!flow.source_side(p)) next[static_cast<std::size_t>(p)] = alpha;
  return next;
}

}  // namespace

std::size_t ChainGraph::node_count() const noexcept {
  std::size_t n = 0;
  for (const auto& c : chains) n += c.queried.size();
  return n;
}

std::size_t ChainGraph::edge_count() const noexcept {
  std::size_t e = 0;
  for (const auto& c : chains)
    if (!c.queried.empty()) e += c.queried.size() - 1;
  return e;
}

ChainGraph build_chain_graph(const Sketch& sketch, const std::vector<std::vector<int>>& point_labels,
                             int label_count) {
  if (point_labels.size() != sketch.strokes.size())
    throw InvalidArgument("got labels for " + std::to_string(point_labels.size()) + " strokes, sketch has " +
                          std::to_string(sketch.strokes.size()));
  ChainGraph g;
  g.label_count = label_count;
  for (std::size_t i = 0; i < point_labels.size(); ++i) {
    if (point_labels[i].size() != sketch.strokes[i].points.size())
      throw InvalidArgument("stroke " + std::to_string(i) + " has " + std::to_string(sketch.strokes[i].points.size()) +
                            " points but " + std::to_string(point_labels[i].size()) + " labels");
    g.chains.push_back({point_labels[i], {}});
  }
  validate_graph(g);
  return g;
}

ChainGraph build_chain_graph(const Sketch& sketch, std::span<const StrokeSamples> samples, int label_count) {
  std::vector<std::vector<int>> labels;
  labels.reserve(samples.size());
  for (const auto& s : samples) labels.push_back(s.labels);
  ChainGraph g = build_chain_graph(sketch, labels, label_count);
  for (std::size_t i = 0; i < samples.size(); ++i) g.chains[i].scores = samples[i].scores;
  return g;
}

double energy(std::span<const int> labels, const ChainGraph& graph, const EnergyParams& params) {
  if (labels.size() != graph.node_count())
    throw InvalidArgument("labeling has " + std::to_string(labels.size()) + " entries for " +
                          std::to_string(graph.node_count()) + " nodes");
  double data = 0.0, smooth = 0.0;
  std::size_t base = 0;
  for (const auto& chain : graph.chains) {
    for (std::size_t i = 0; i < chain.queried.size(); ++i) {
      if (labels[base + i] != chain.queried[i]) data += params.c_d;
      if (i + 1 < chain.queried.size() && labels[base + i] != labels[base + i + 1]) smooth += params.c_s;
    }
    base += chain.queried.size();
  }
  return data + smooth;
}

Labeling queried_labeling(const ChainGraph& graph, const EnergyParams& params) {
  Labeling l;
  for (const auto& c : graph.chains) l.labels.insert(l.labels.end(), c.queried.begin(), c.queried.end());
  l.energy = energy(l.labels, graph, params);
  return l;
}

Labeling refine_dp(const ChainGraph& graph, const EnergyParams& params) {
  validate_params(params);
  validate_graph(graph);
  const int L = graph.label_count;
  Labeling out;
  out.labels.reserve(graph.node_count());

  std::vector<double> cost;  // cost-to-go, n x L, label l stored at column l - 1
  for (const auto& chain : graph.chains) {
    const int n = static_cast<int>(chain.queried.size());
    if (n == 0) continue;
    cost.assign(static_cast<std::size_t>(n) * L, 0.0);
    auto at = [&](int t, int l) -> double& { return cost[static_cast<std::size_t>(t) * L + (l - 1)]; };
    auto data = [&](int t, int l) { return l == chain.queried[static_cast<std::size_t>(t)] ? 0.0 : params.c_d; };

    for (int l = 1; l <= L; ++l) at(n - 1, l) = data(n - 1, l);
    for (int t = n - 2; t >= 0; --t) {
      double best_next = std::numeric_limits<double>::infinity();
      for (int l = 1; l <= L; ++l) best_next = std::min(best_next, at(t + 1, l));
      for (int l = 1; l <= L; ++l) at(t, l) = data(t, l) + std::min(at(t + 1, l), best_next + params.c_s);
    }

    int prev = 0;
    for (int t = 0; t < n; ++t) {
      auto value = [&](int l) { return (t > 0 && l != prev ? params.c_s : 0.0) + at(t, l); };
      double m = std::numeric_limits<double>::infinity();
      for (int l = 1; l <= L; ++l) m = std::min(m, value(l));
      int pick = 1;
      for (int l = 1; l <= L; ++l)
        if (value(l) <= m + tie_tolerance(m)) {
          pick = l;
          break;
        }
      out.labels.push_back(pick);
      prev = pick;
    }
  }
  out.energy = energy(out.labels, graph, params);
  return out;
}

ExpansionResult refine_alpha_expansion(const ChainGraph& graph, const EnergyParams& params, std::uint64_t seed) {
  validate_params(params);
  validate_graph(graph);
  std::vector<int> order(static_cast<std::size_t>(graph.label_count));
  std::iota(order.begin(), order.end(), 1);
  if (seed != 0) {
    std::mt19937_64 rng(seed);
    std::shuffle(order.begin(), order.end(), rng);
  }

  ExpansionResult res;
  res.labeling = queried_labeling(graph, params);
  res.energy_trace.push_back(res.labeling.energy);
  constexpr int kMaxCycles = 100;
  for (int cycle = 0; cycle < kMaxCycles; ++cycle) {
    bool improved = false;
    for (int alpha : order) {
      std::vector<int> next = expansion_move(graph, res.labeling.labels, alpha, params);
      const double e = energy(next, graph, params);
      if (e < res.labeling.energy - tie_tolerance(res.labeling.energy)) {
        res.labeling.labels = std::move(next);
        res.labeling.energy = e;
        res.energy_trace.push_back(e);
        improved = true;
      }
    }
    ++res.cycles;
    if (!improved) break;
  }
  return res;
}

Labeling brute_force_refine(const ChainGraph& graph, const EnergyParams& params) {
  validate_params(params);
  const std::size_t n = graph.node_count();
  if (n > kBruteForceMaxNodes || graph.label_count > kBruteForceMaxLabels)
    throw InvalidArgument("instance too large for exhaustive search (" + std::to_string(n) + " nodes, " +
                          std::to_string(graph.label_count) + " labels)");
  Labeling best;
  if (n == 0) return best;
  validate_graph(graph);

  // Flatten chains: queried label per node and whether the node continues the previous one.
  std::vector<int> queried;
  std::vector<bool> linked;
  for (const auto& c : graph.chains)
    for (std::size_t i = 0; i < c.queried.size(); ++i) {
      queried.push_back(c.queried[i]);
      linked.push_back(i > 0);
    }

  std::vector<int> cur(n, 1);
  best.energy = std::numeric_limits<double>::infinity();
  auto recurse = [&](auto&& self, std::size_t i, double partial) -> void {
    if (i == n) {
      if (best.labels.empty() || partial < best.energy - tie_tolerance(best.energy)) {
        best.energy = partial;
        best.labels = cur;
      }
      return;
    }
    for (int l = 1; l <= graph.label_count; ++l) {
      cur[i] = l;
      double e = partial + (l != queried[i] ? params.c_d : 0.0);
      if (linked[i] && cur[i - 1] != l) e += params.c_s;
      self(self, i + 1, e);
    }
  };
  recurse(recurse, 0, 0.0);
  best.energy = energy(best.labels, graph, params);
  return best;
}

std::vector<std::vector<int>> split_by_chain(const ChainGraph& graph, std::span<const int> labels) {
  if (labels.size() != graph.node_count()) throw InvalidArgument("labeling does not cover the graph");
  std::vector<std::vector<int>> out;
  std::size_t base = 0;
  for (const auto& c : graph.chains) {
    out.emplace_back(labels.begin() + static_cast<std::ptrdiff_t>(base),
                     labels.begin() + static_cast<std::ptrdiff_t>(base + c.queried.size()));
    base += c.queried.size();
  }
  return out;
}

}  // namespace sketchseg
