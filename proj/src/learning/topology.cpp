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

#include "iiote/learning/topology.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <queue>

#include "iiote/core/error.hpp"

namespace iiote::learning {

Topology::Topology(TopologyKind kind, std::vector<Role> roles, std::vector<Edge> edges,
                   std::vector<int> order, std::vector<std::array<double, 2>> positions,
                   std::optional<long> coherence)
    : kind_(kind),
      roles_(std::move(roles)),
      edges_(std::move(edges)),
      order_(std::move(order)),
      positions_(std::move(positions)),
      coherence_(coherence),
      incidence_(roles_.size()) {
  const int n = size();
  for (int e = 0; e < static_cast<int>(edges_.size()); ++e) {
    const auto [l, r] = edges_[e];
    if (l < 0 || r < 0 || l >= n || r >= n || l == r) {
      throw InvalidArgument("Topology: edge endpoint out of range");
    }
    incidence_[l].push_back({e, r, +1});
    incidence_[r].push_back({e, l, -1});
  }
  if (coherence_ && *coherence_ < 1) throw InvalidArgument("Topology: coherence must be >= 1");
}

std::vector<int> Topology::heads() const {
  std::vector<int> out;
  for (int i = 0; i < size(); ++i) {
    if (roles_[i] == Role::head) out.push_back(i);
  }
  return out;
}

std::vector<int> Topology::tails() const {
  std::vector<int> out;
  for (int i = 0; i < size(); ++i) {
    if (roles_[i] == Role::tail) out.push_back(i);
  }
  return out;
}

bool Topology::connected() const {
  if (size() == 0) return true;
  std::vector<char> seen(size(), 0);
  std::queue<int> q;
  q.push(0);
  seen[0] = 1;
  int count = 1;
  while (!q.empty()) {
    const int u = q.front();
    q.pop();
    for (const auto& inc : incidence_[u]) {
      if (!seen[inc.neighbor]) {
        seen[inc.neighbor] = 1;
        ++count;
        q.push(inc.neighbor);
      }
    }
  }
  return count == size();
}

bool Topology::role_bipartite() const {
  return std::all_of(edges_.begin(), edges_.end(),
                     [&](const Edge& e) { return roles_[e.left] != roles_[e.right]; });
}

namespace {

std::vector<std::array<double, 2>> random_positions(int n, Rng& rng) {
  std::vector<std::array<double, 2>> pos(n);
  for (auto& p : pos) {
    p[0] = rng.next_uniform();
    p[1] = rng.next_uniform();
  }
  return pos;
}

void shuffle(std::vector<int>& v, Rng& rng) {
  for (std::size_t i = v.size(); i > 1; --i) {
    const auto j = static_cast<std::size_t>(rng.uniform_int(0, static_cast<std::int64_t>(i) - 1));
    std::swap(v[i - 1], v[j]);
  }
}

}  // namespace

Topology chain_from_order(std::vector<int> order, std::vector<std::array<double, 2>> positions,
                          std::optional<long> coherence) {
  const int n = static_cast<int>(order.size());
  std::vector<Role> roles(n);
  std::vector<Edge> edges;
  for (int i = 0; i < n; ++i) roles[order[i]] = (i % 2 == 0) ? Role::head : Role::tail;
  for (int i = 0; i + 1 < n; ++i) edges.push_back({order[i], order[i + 1]});
  return Topology(TopologyKind::chain, std::move(roles), std::move(edges), std::move(order),
                  std::move(positions), coherence);
}

Topology build_topology(int workers, TopologyKind kind, Seed seed, double mean_degree) {
  if (workers < 2) throw InvalidArgument("build_topology: need N >= 2 workers");
  Rng rng = Rng::for_stream(seed, 0x746f706fULL);  // "topo"
  auto positions = random_positions(workers, rng);

  if (kind == TopologyKind::chain) {
    std::vector<int> order(workers);
    std::iota(order.begin(), order.end(), 0);
    return chain_from_order(std::move(order), std::move(positions), std::nullopt);
  }

  // Random head/tail split, a spanning alternating path for connectivity,
  // then extra head-tail links until the mean degree is reached in expectation.
  std::vector<int> ids(workers);
  std::iota(ids.begin(), ids.end(), 0);
  shuffle(ids, rng);
  const int n_heads = (workers + 1) / 2;
  std::vector<int> heads(ids.begin(), ids.begin() + n_heads);
  std::vector<int> tails(ids.begin() + n_heads, ids.end());
  std::sort(heads.begin(), heads.end());
  std::sort(tails.begin(), tails.end());

  std::vector<Role> roles(workers, Role::tail);
  for (int h : heads) roles[h] = Role::head;

  std::vector<int> hp = heads, tp = tails;
  shuffle(hp, rng);
  shuffle(tp, rng);
  std::vector<std::vector<char>> linked(workers, std::vector<char>(workers, 0));
  std::vector<Edge> edges;
  auto link = [&](int h, int t) {
    if (linked[h][t]) return;
    linked[h][t] = linked[t][h] = 1;
    edges.push_back({h, t});
  };
  for (std::size_t i = 0; i < tp.size(); ++i) {
    link(hp[i], tp[i]);
    if (i + 1 < hp.size()) link(hp[i + 1], tp[i]);
  }

  const double pairs = static_cast<double>(heads.size() * tails.size());
  const double wanted = mean_degree * workers / 2.0 - static_cast<double>(edges.size());
  const double free_pairs = pairs - static_cast<double>(edges.size());
  const double p = (free_pairs > 0 && wanted > 0) ? std::min(1.0, wanted / free_pairs) : 0.0;
  for (int h : heads) {
    for (int t : tails) {
      if (!linked[h][t] && rng.bernoulli(p)) link(h, t);
    }
  }
  std::sort(edges.begin(), edges.end(), [](const Edge& a, const Edge& b) {
    return a.left != b.left ? a.left < b.left : a.right < b.right;
  });
  return Topology(TopologyKind::bipartite, std::move(roles), std::move(edges), {},
                  std::move(positions), std::nullopt);
}

Topology rechain(const Topology& topology, long iteration, Seed seed) {
  if (topology.kind() != TopologyKind::chain) {
    throw InvalidArgument("rechain: topology must be a chain");
  }
  const auto coherence = topology.coherence();
  if (!coherence) return topology;
  if (iteration % *coherence != 0) {
    throw InvalidArgument("rechain: iteration is not a multiple of the coherence period");
  }
  const int n = topology.size();
  if (n <= 2) return topology;

  Rng rng = Rng::for_stream(seed, static_cast<std::uint64_t>(iteration));
  // Partial Fisher-Yates over the interior workers 1..n-2.
  std::vector<int> interior(n - 2);
  std::iota(interior.begin(), interior.end(), 1);
  const int extra_heads = (n + 1) / 2 - 1;
  for (int i = 0; i < extra_heads; ++i) {
    const auto j = static_cast<int>(rng.uniform_int(i, static_cast<std::int64_t>(interior.size()) - 1));
    std::swap(interior[i], interior[j]);
  }
  std::vector<Role> roles(n, Role::tail);
  roles[0] = Role::head;
  for (int i = 0; i < extra_heads; ++i) roles[interior[i]] = Role::head;

  const auto& pos = topology.positions();
  auto dist2 = [&](int a, int b) {
    const double dx = pos[a][0] - pos[b][0];
    const double dy = pos[a][1] - pos[b][1];
    return dx * dx + dy * dy;
  };

  std::vector<char> used(n, 0);
  std::vector<int> order{0};
  used[0] = 1;
  while (static_cast<int>(order.size()) < n) {
    const int cur = order.back();
    const Role want = roles[cur] == Role::head ? Role::tail : Role::head;
    int best = -1;
    for (int c = 0; c < n; ++c) {
      if (used[c] || roles[c] != want) continue;
      if (best < 0 || dist2(cur, c) < dist2(cur, best)) best = c;
    }
    used[best] = 1;
    order.push_back(best);
  }
  return chain_from_order(std::move(order), pos, coherence);
}

}  // namespace iiote::learning
