// Copyright 2026 The iiote Authors. All Rights Reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// =============================================================================

#include "iiote/placement/kernels.hpp"

#include <vector>

namespace iiote::placement {

namespace {

constexpr std::uint64_t kBlock = 1 << 16;

struct CostTables {
  int n_comp;
  int n_node;
  std::vector<double> device;  // [t * M + n]
  std::vector<double> demand;
  std::vector<double> capacity;
  struct Flow {
    int from, to;
    double output;
  };
  std::vector<Flow> flows;
  const NetGraph* net;

  CostTables(const AppGraph& app, const NetGraph& g)
      : n_comp(app.size()), n_node(g.size()), net(&g) {
    device.resize(static_cast<std::size_t>(n_comp) * n_node);
    for (int t = 0; t < n_comp; ++t) {
      demand.push_back(app.components[t].resources);
      for (int n = 0; n < n_node; ++n) {
        device[static_cast<std::size_t>(t * n_node + n)] = device_cost(app.components[t], g.node(n));
      }
    }
    for (int n = 0; n < n_node; ++n) capacity.push_back(g.node(n).resources);
    for (const auto& e : app.edges) flows.push_back({e.from, e.to, app.components[e.from].output});
  }

  // Returns false when capacities are exceeded.
  bool cost(std::uint64_t index, std::vector<int>& x, std::vector<double>& load, double& out) const {
    std::fill(load.begin(), load.end(), 0.0);
    double c = 0.0;
    for (int t = 0; t < n_comp; ++t) {
      const int n = static_cast<int>(index % static_cast<std::uint64_t>(n_node));
      index /= static_cast<std::uint64_t>(n_node);
      x[t] = n;
      load[n] += demand[t];
      if (load[n] > capacity[n]) return false;
      c += device[static_cast<std::size_t>(t * n_node + n)];
    }
    for (const auto& f : flows) c += f.output * net->distance(x[f.from], x[f.to]);
    out = c;
    return true;
  }
};

std::uint64_t total_maps(const AppGraph& app, const NetGraph& net) {
  std::uint64_t total = 1;
  for (int t = 0; t < app.size(); ++t) total *= static_cast<std::uint64_t>(net.size());
  return total;
}

std::optional<EnumerationBest> scan_block(const CostTables& tab, std::uint64_t begin,
                                          std::uint64_t end) {
  std::vector<int> x(tab.n_comp);
  std::vector<double> load(tab.n_node);
  std::optional<EnumerationBest> best;
  for (std::uint64_t i = begin; i < end; ++i) {
    double c;
    if (!tab.cost(i, x, load, c)) continue;
    if (!best || c < best->cost) best = EnumerationBest{i, c};
  }
  return best;
}

std::optional<EnumerationBest> reduce(const std::vector<std::optional<EnumerationBest>>& blocks) {
  std::optional<EnumerationBest> best;
  for (const auto& b : blocks) {
    if (b && (!best || b->cost < best->cost)) best = b;
  }
  return best;
}

}  // namespace

std::vector<int> decode_assignment(std::uint64_t index, int components, int nodes) {
  std::vector<int> x(components);
  for (int t = 0; t < components; ++t) {
    x[t] = static_cast<int>(index % static_cast<std::uint64_t>(nodes));
    index /= static_cast<std::uint64_t>(nodes);
  }
  return x;
}

std::optional<EnumerationBest> enumerate_serial(const AppGraph& app, const NetGraph& net) {
  const CostTables tab(app, net);
  const std::uint64_t total = total_maps(app, net);
  const std::uint64_t blocks = (total + kBlock - 1) / kBlock;
  std::vector<std::optional<EnumerationBest>> per_block(blocks);
  for (std::uint64_t b = 0; b < blocks; ++b) {
    per_block[b] = scan_block(tab, b * kBlock, std::min(total, (b + 1) * kBlock));
  }
  return reduce(per_block);
}

std::optional<EnumerationBest> enumerate_parallel(const AppGraph& app, const NetGraph& net) {
  const CostTables tab(app, net);
  const std::uint64_t total = total_maps(app, net);
  const auto blocks = static_cast<long>((total + kBlock - 1) / kBlock);
  std::vector<std::optional<EnumerationBest>> per_block(static_cast<std::size_t>(blocks));
#pragma omp parallel for schedule(dynamic)
  for (long b = 0; b < blocks; ++b) {
    const auto ub = static_cast<std::uint64_t>(b);
    per_block[ub] = scan_block(tab, ub * kBlock, std::min(total, (ub + 1) * kBlock));
  }
  return reduce(per_block);
}

}  // namespace iiote::placement
