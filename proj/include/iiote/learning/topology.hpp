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

#include <array>
#include <optional>
#include <vector>

#include "iiote/core/random.hpp"

namespace iiote::learning {

enum class TopologyKind { chain, bipartite };
enum class Role { head, tail };

// Constraint theta_left = theta_right. The dual enters the left worker's
// update with + and the right worker's with -.
struct Edge {
  int left;
  int right;
  friend bool operator==(const Edge&, const Edge&) = default;
};

struct Incidence {
  int edge;      // index into Topology::edges()
  int neighbor;  // worker on the other end
  int sign;      // +1 if this worker is the left endpoint, -1 otherwise
};

// Worker ids are 0-based. For chains, head/tail roles alternate along
// `order()` starting with a head.
class Topology {
 public:
  Topology(TopologyKind kind, std::vector<Role> roles, std::vector<Edge> edges,
           std::vector<int> order, std::vector<std::array<double, 2>> positions,
           std::optional<long> coherence = std::nullopt);

  TopologyKind kind() const { return kind_; }
  int size() const { return static_cast<int>(roles_.size()); }
  const std::vector<Edge>& edges() const { return edges_; }
  const std::vector<Role>& roles() const { return roles_; }
  Role role(int worker) const { return roles_[worker]; }
  const std::vector<Incidence>& incident(int worker) const { return incidence_[worker]; }
  // Chain order (empty for bipartite graphs).
  const std::vector<int>& order() const { return order_; }
  // Unit-square positions used as the communication cost when re-chaining.
  const std::vector<std::array<double, 2>>& positions() const { return positions_; }
  // Iterations between re-chains; nullopt means the topology is static.
  std::optional<long> coherence() const { return coherence_; }
  void set_coherence(std::optional<long> c) { coherence_ = c; }

  std::vector<int> heads() const;
  std::vector<int> tails() const;

  bool connected() const;
  // True when no edge joins two workers of the same role.
  bool role_bipartite() const;

 private:
  TopologyKind kind_;
  std::vector<Role> roles_;
  std::vector<Edge> edges_;
  std::vector<int> order_;
  std::vector<std::array<double, 2>> positions_;
  std::optional<long> coherence_;
  std::vector<std::vector<Incidence>> incidence_;
};

// Chain 0-1-...-(N-1), or a connected random bipartite graph whose mean
// degree is close to `mean_degree`. Throws InvalidArgument for N < 2.
Topology build_topology(int workers, TopologyKind kind, Seed seed, double mean_degree = 3.0);

// Chain whose worker sequence is `order`, roles alternating head/tail.
Topology chain_from_order(std::vector<int> order, std::vector<std::array<double, 2>> positions,
                          std::optional<long> coherence);

// Draws a fresh head set and chain for re-chaining step k. Worker 0 stays a
// head and worker N-1 a tail; the remaining ceil(N/2)-1 heads are drawn from
// the stream (seed, k). The chain is built greedily from worker 0 by hopping
// to the nearest unvisited worker of the opposite role.
Topology rechain(const Topology& topology, long iteration, Seed seed);

}  // namespace iiote::learning
