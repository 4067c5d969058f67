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

#include "iiote/placement/instance.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <queue>

#include "iiote/core/error.hpp"

namespace iiote::placement {

std::string to_string(AppShape s) {
  switch (s) {
    case AppShape::wide: return "wide";
    case AppShape::long_chain: return "long";
    case AppShape::custom: return "custom";
  }
  return "?";
}

AppShape parse_shape(const std::string& s) {
  if (s == "wide") return AppShape::wide;
  if (s == "long") return AppShape::long_chain;
  if (s == "custom") return AppShape::custom;
  throw InvalidShape("unknown application shape '" + s + "'");
}

void AppGraph::validate() const {
  const int n = size();
  for (int i = 0; i < n; ++i) {
    const auto& c = components[i];
    const auto where = "component " + std::to_string(i);
    if (c.id != i) throw InvalidArgument(where + ": id must equal its position");
    if (!(c.resources > 0.0)) throw DomainError(where + ": R_t must be > 0");
    if (!(c.output >= 0.0)) throw DomainError(where + ": O_t must be >= 0");
    if (!(c.compute > 0.0)) throw DomainError(where + ": S_t must be > 0");
  }
  std::vector<int> indegree(n, 0);
  std::vector<std::vector<int>> out(n);
  for (const auto& e : edges) {
    if (e.from < 0 || e.to < 0 || e.from >= n || e.to >= n || e.from == e.to) {
      throw InvalidArgument("edge [" + std::to_string(e.from) + ", " + std::to_string(e.to) +
                            "]: endpoint out of range");
    }
    ++indegree[e.to];
    out[e.from].push_back(e.to);
  }
  std::queue<int> ready;
  for (int i = 0; i < n; ++i) {
    if (indegree[i] == 0) ready.push(i);
  }
  int seen = 0;
  while (!ready.empty()) {
    const int u = ready.front();
    ready.pop();
    ++seen;
    for (int v : out[u]) {
      if (--indegree[v] == 0) ready.push(v);
    }
  }
  if (seen != n) throw InvalidArgument("application graph has a cycle");
}

NetGraph::NetGraph(std::vector<NetNode> nodes, std::vector<NetLink> links)
    : nodes_(std::move(nodes)), links_(std::move(links)) {
  const int m = size();
  for (int i = 0; i < m; ++i) {
    const auto& n = nodes_[i];
    const auto where = "node " + std::to_string(i);
    if (n.id != i) throw InvalidArgument(where + ": id must equal its position");
    if (!(n.speedup > 0.0)) throw DomainError(where + ": P_n must be > 0");
    if (!(n.resources > 0.0)) throw DomainError(where + ": R_n must be > 0");
    if (!(n.energy_per_unit > 0.0)) throw DomainError(where + ": C_n must be > 0");
  }
  const double inf = std::numeric_limits<double>::infinity();
  dist_.assign(static_cast<std::size_t>(m) * m, inf);
  std::vector<double> link_sum(m, 0.0);
  std::vector<int> link_count(m, 0);
  for (int i = 0; i < m; ++i) dist_[static_cast<std::size_t>(i * m + i)] = 0.0;
  for (const auto& l : links_) {
    if (l.a < 0 || l.b < 0 || l.a >= m || l.b >= m || l.a == l.b) {
      throw InvalidArgument("link [" + std::to_string(l.a) + ", " + std::to_string(l.b) +
                            "]: endpoint out of range");
    }
    if (!(l.energy >= 0.0)) throw DomainError("link: T_l must be >= 0");
    auto& ab = dist_[static_cast<std::size_t>(l.a * m + l.b)];
    ab = std::min(ab, l.energy);
    dist_[static_cast<std::size_t>(l.b * m + l.a)] = ab;
    link_sum[l.a] += l.energy;
    link_sum[l.b] += l.energy;
    ++link_count[l.a];
    ++link_count[l.b];
  }
  // Floyd-Warshall.
  for (int k = 0; k < m; ++k) {
    for (int i = 0; i < m; ++i) {
      const double ik = dist_[static_cast<std::size_t>(i * m + k)];
      if (ik == inf) continue;
      for (int j = 0; j < m; ++j) {
        const double via = ik + dist_[static_cast<std::size_t>(k * m + j)];
        auto& ij = dist_[static_cast<std::size_t>(i * m + j)];
        if (via < ij) ij = via;
      }
    }
  }
  mean_link_.resize(m);
  for (int i = 0; i < m; ++i) {
    mean_link_[i] = link_count[i] ? link_sum[i] / link_count[i] : 0.0;
  }
}

bool NetGraph::connected() const {
  for (double d : dist_) {
    if (std::isinf(d)) return false;
  }
  return true;
}

double device_cost(const AppComponent& t, const NetNode& n) {
  return n.energy_per_unit * (t.compute / n.speedup);
}

Assignment evaluate_assignment(const AppGraph& app, const NetGraph& net, std::vector<int> node_of) {
  if (static_cast<int>(node_of.size()) != app.size()) {
    throw InvalidArgument("assignment must map every component exactly once");
  }
  for (std::size_t t = 0; t < node_of.size(); ++t) {
    if (node_of[t] < 0 || node_of[t] >= net.size()) {
      throw InvalidArgument("component " + std::to_string(t) + " mapped to unknown node " +
                            std::to_string(node_of[t]));
    }
  }
  Assignment a;
  std::vector<double> load(net.size(), 0.0);
  for (int t = 0; t < app.size(); ++t) {
    const int n = node_of[t];
    a.device_energy += device_cost(app.components[t], net.node(n));
    load[n] += app.components[t].resources;
  }
  for (const auto& e : app.edges) {
    a.network_energy += app.components[e.from].output * net.distance(node_of[e.from], node_of[e.to]);
  }
  a.total_energy = a.device_energy + a.network_energy;
  for (int n = 0; n < net.size(); ++n) {
    if (load[n] > net.node(n).resources) a.overloaded.push_back(n);
  }
  a.node_of = std::move(node_of);
  return a;
}

void require_feasible(const Assignment& a, const NetGraph& net) {
  if (a.feasible()) return;
  const int n = a.overloaded.front();
  throw Infeasible("node " + std::to_string(n) + ": assigned resources exceed R_n = " +
                   std::to_string(net.node(n).resources));
}

}  // namespace iiote::placement
