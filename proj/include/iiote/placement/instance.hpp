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

#pragma once

#include <string>
#include <vector>

namespace iiote::placement {

struct AppComponent {
  int id = 0;
  std::string name;
  double resources = 1.0;  // R_t
  double output = 1.0;     // O_t, data sent per input
  double compute = 1.0;    // S_t, computation time multiple
};

enum class AppShape { wide, long_chain, custom };

std::string to_string(AppShape s);
AppShape parse_shape(const std::string& s);

// Directed data dependency; carries O_from units per execution.
struct AppEdge {
  int from = 0;
  int to = 0;
  friend bool operator==(const AppEdge&, const AppEdge&) = default;
};

struct AppGraph {
  AppShape shape = AppShape::custom;
  std::vector<AppComponent> components;
  std::vector<AppEdge> edges;

  int size() const { return static_cast<int>(components.size()); }
  // Checks ids, attribute ranges, edge endpoints and acyclicity.
  void validate() const;
};

enum class NodeKind { wired, wireless };

struct NetNode {
  int id = 0;
  NodeKind kind = NodeKind::wired;
  double speedup = 1.0;          // P_n
  double resources = 1.0;        // R_n
  double energy_per_unit = 1.0;  // C_n
};

struct NetLink {
  int a = 0;
  int b = 0;
  double energy = 0.2;  // T_l
};

// Device network with its all-pairs shortest-path energy matrix D.
class NetGraph {
 public:
  NetGraph() = default;
  NetGraph(std::vector<NetNode> nodes, std::vector<NetLink> links);

  int size() const { return static_cast<int>(nodes_.size()); }
  const std::vector<NetNode>& nodes() const { return nodes_; }
  const std::vector<NetLink>& links() const { return links_; }
  const NetNode& node(int n) const { return nodes_[n]; }

  // D(a, b); D(n, n) = 0, +inf when unreachable.
  double distance(int a, int b) const { return dist_[static_cast<std::size_t>(a * size() + b)]; }
  // Mean energy of the links incident on n (0 for an isolated node).
  double mean_link_energy(int n) const { return mean_link_[n]; }
  bool connected() const;

 private:
  std::vector<NetNode> nodes_;
  std::vector<NetLink> links_;
  std::vector<double> dist_;
  std::vector<double> mean_link_;
};

// X as a component -> node map, with its energy breakdown.
struct Assignment {
  std::vector<int> node_of;
  double device_energy = 0.0;   // E_d
  double network_energy = 0.0;  // E_n
  double total_energy = 0.0;    // E_t = E_d + E_n
  std::vector<int> overloaded;  // nodes whose capacity is exceeded

  bool feasible() const { return overloaded.empty(); }
};

// Device cost C_n * S_t / P_n of running component t on node n.
double device_cost(const AppComponent& t, const NetNode& n);

// E_d = sum_t C_X(t) S_t / P_X(t); E_n = sum_{(t1,t2)} O_t1 D(X(t1), X(t2)).
// Capacity violations are listed in `overloaded`; energies are still filled.
// Throws InvalidArgument when X is not total or names an unknown node.
Assignment evaluate_assignment(const AppGraph& app, const NetGraph& net, std::vector<int> node_of);

// Throws Infeasible naming the first overloaded node.
void require_feasible(const Assignment& a, const NetGraph& net);

}  // namespace iiote::placement
