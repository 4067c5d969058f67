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

#include "iiote/placement/solvers.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "iiote/core/error.hpp"
#include "iiote/placement/kernels.hpp"

namespace iiote::placement {

void check_capacity(const AppGraph& app, const NetGraph& net) {
  double need = 0.0, have = 0.0, largest_node = 0.0;
  for (const auto& c : app.components) need += c.resources;
  for (const auto& n : net.nodes()) {
    have += n.resources;
    largest_node = std::max(largest_node, n.resources);
  }
  if (need > have) {
    throw Infeasible("total R_t " + std::to_string(need) + " exceeds total R_n " +
                     std::to_string(have));
  }
  for (const auto& c : app.components) {
    if (c.resources > largest_node) {
      throw Infeasible("component " + std::to_string(c.id) + ": R_t = " +
                       std::to_string(c.resources) + " fits on no node");
    }
  }
}

namespace {

using Clock = std::chrono::steady_clock;

// Components in decreasing R_t, ties by id.
std::vector<int> branching_order(const AppGraph& app) {
  std::vector<int> order(app.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    return app.components[a].resources > app.components[b].resources;
  });
  return order;
}

double tolerance(double v) { return 1e-12 * std::max(1.0, std::abs(v)); }

// Shared incumbent bookkeeping. An upper bound may be known before any
// assignment is (seeded from another solver); the first leaf within it
// becomes the incumbent and only strict improvements replace it.
struct Incumbent {
  double cost = std::numeric_limits<double>::infinity();
  std::vector<int> x;

  bool prunes(double bound) const {
    if (x.empty()) return bound > cost + tolerance(cost);
    return bound >= cost - tolerance(cost);
  }
  bool accepts(double c) const {
    if (x.empty()) return c <= cost + tolerance(cost);
    return c < cost - tolerance(cost);
  }
};

class ExactSearch {
 public:
  ExactSearch(const AppGraph& app, const NetGraph& net,
              std::optional<std::chrono::duration<double>> budget)
      : app_(app), net_(net), m_(net.size()), order_(branching_order(app)),
        x_(app.size(), -1), load_(net.size(), 0.0), adj_(app.size()) {
    for (const auto& e : app.edges) {
      adj_[e.from].push_back(e);
      adj_[e.to].push_back(e);
    }
    suffix_.assign(order_.size() + 1, 0.0);
    for (int p = static_cast<int>(order_.size()) - 1; p >= 0; --p) {
      double lo = std::numeric_limits<double>::infinity();
      for (int n = 0; n < m_; ++n) lo = std::min(lo, device_cost(app.components[order_[p]], net.node(n)));
      suffix_[p] = suffix_[p + 1] + lo;
    }
    if (budget) deadline_ = Clock::now() + std::chrono::duration_cast<Clock::duration>(*budget);
  }

  // `fallback` is returned if the budget runs out before any leaf is reached.
  void seed_upper_bound(double ub, std::vector<int> fallback) {
    best_.cost = ub;
    fallback_ = std::move(fallback);
  }

  SolveResult run() {
    dfs(0, 0.0);
    if (best_.x.empty() && timed_out_) best_.x = fallback_;
    if (best_.x.empty()) throw Infeasible("no assignment satisfies the node capacities");
    SolveResult r;
    r.assignment = evaluate_assignment(app_, net_, best_.x);
    r.objective = r.assignment.total_energy;
    r.nodes_explored = explored_;
    if (timed_out_) {
      r.status = SolveStatus::time_budget_exceeded;
      r.lower_bound = suffix_[0];
    } else {
      r.lower_bound = r.objective;
    }
    return r;
  }

 private:
  double link_cost(int t, int n) const {
    double c = 0.0;
    for (const auto& e : adj_[t]) {
      const int other = e.from == t ? e.to : e.from;
      if (x_[other] < 0) continue;
      const int a = e.from == t ? n : x_[other];
      const int b = e.from == t ? x_[other] : n;
      c += app_.components[e.from].output * net_.distance(a, b);
    }
    return c;
  }

  void dfs(std::size_t pos, double partial) {
    if (timed_out_) return;
    if ((++explored_ & 4095) == 0 && deadline_ && Clock::now() > *deadline_) {
      timed_out_ = true;
      return;
    }
    if (pos == order_.size()) {
      if (best_.accepts(partial)) {
        best_.cost = partial;
        best_.x = x_;
      }
      return;
    }
    const int t = order_[pos];
    const auto& comp = app_.components[t];
    for (int n = 0; n < m_; ++n) {
      if (load_[n] + comp.resources > net_.node(n).resources) continue;
      const double step = device_cost(comp, net_.node(n)) + link_cost(t, n);
      const double next = partial + step;
      if (best_.prunes(next + suffix_[pos + 1])) continue;
      x_[t] = n;
      load_[n] += comp.resources;
      dfs(pos + 1, next);
      load_[n] -= comp.resources;
      x_[t] = -1;
      if (timed_out_) return;
    }
  }

  const AppGraph& app_;
  const NetGraph& net_;
  int m_;
  std::vector<int> order_;
  std::vector<int> x_;
  std::vector<double> load_;
  std::vector<std::vector<AppEdge>> adj_;
  std::vector<double> suffix_;
  Incumbent best_;
  std::vector<int> fallback_;
  std::optional<Clock::time_point> deadline_;
  bool timed_out_ = false;
  long explored_ = 0;
};

// Branch-and-bound for the separable surrogate. The bound charges each
// unassigned component its cheapest node that still has room.
class SeparableSearch {
 public:
  SeparableSearch(const AppGraph& app, const NetGraph& net)
      : app_(app), net_(net), m_(net.size()), order_(branching_order(app)),
        x_(app.size(), -1), load_(net.size(), 0.0),
        cost_(static_cast<std::size_t>(app.size()) * net.size()) {
    for (int t = 0; t < app.size(); ++t) {
      for (int n = 0; n < m_; ++n) {
        cost_[idx(t, n)] = device_cost(app.components[t], net.node(n)) +
                           app.components[t].output * net.mean_link_energy(n);
      }
    }
  }

  SolveResult run() {
    greedy_incumbent();
    dfs(0, 0.0);
    if (best_.x.empty()) throw Infeasible("no assignment satisfies the node capacities");
    SolveResult r;
    r.assignment = evaluate_assignment(app_, net_, best_.x);
    r.objective = best_.cost;
    r.lower_bound = best_.cost;
    r.nodes_explored = explored_;
    return r;
  }

 private:
  std::size_t idx(int t, int n) const { return static_cast<std::size_t>(t * m_ + n); }

  void greedy_incumbent() {
    std::vector<double> load(m_, 0.0);
    std::vector<int> x(app_.size(), -1);
    double total = 0.0;
    for (int t : order_) {
      int pick = -1;
      for (int n = 0; n < m_; ++n) {
        if (load[n] + app_.components[t].resources > net_.node(n).resources) continue;
        if (pick < 0 || cost_[idx(t, n)] < cost_[idx(t, pick)]) pick = n;
      }
      if (pick < 0) return;
      x[t] = pick;
      load[pick] += app_.components[t].resources;
      total += cost_[idx(t, pick)];
    }
    best_.cost = total;
  }

  // Returns +inf when some remaining component fits nowhere.
  double bound(std::size_t pos) const {
    double b = 0.0;
    for (std::size_t p = pos; p < order_.size(); ++p) {
      const int t = order_[p];
      double lo = std::numeric_limits<double>::infinity();
      for (int n = 0; n < m_; ++n) {
        if (load_[n] + app_.components[t].resources <= net_.node(n).resources) {
          lo = std::min(lo, cost_[idx(t, n)]);
        }
      }
      b += lo;
    }
    return b;
  }

  void dfs(std::size_t pos, double partial) {
    ++explored_;
    if (pos == order_.size()) {
      if (best_.accepts(partial)) {
        best_.cost = partial;
        best_.x = x_;
      }
      return;
    }
    const int t = order_[pos];
    const double demand = app_.components[t].resources;
    for (int n = 0; n < m_; ++n) {
      if (load_[n] + demand > net_.node(n).resources) continue;
      const double next = partial + cost_[idx(t, n)];
      x_[t] = n;
      load_[n] += demand;
      if (!best_.prunes(next + bound(pos + 1))) dfs(pos + 1, next);
      load_[n] -= demand;
      x_[t] = -1;
    }
  }

  const AppGraph& app_;
  const NetGraph& net_;
  int m_;
  std::vector<int> order_;
  std::vector<int> x_;
  std::vector<double> load_;
  std::vector<double> cost_;
  Incumbent best_;
  long explored_ = 0;
};

void check_instance(const AppGraph& app, const NetGraph& net) {
  app.validate();
  if (app.size() < 1) throw InvalidArgument("application has no components");
  if (net.size() < 1) throw InvalidArgument("network has no nodes");
  check_capacity(app, net);
}

}  // namespace

SolveResult solve_heuristic(const AppGraph& app, const NetGraph& net) {
  check_instance(app, net);
  return SeparableSearch(app, net).run();
}

SolveResult solve_optimal(const AppGraph& app, const NetGraph& net,
                          std::optional<std::chrono::duration<double>> time_budget) {
  check_instance(app, net);
  const auto start = Clock::now();
  const SolveResult heuristic = SeparableSearch(app, net).run();
  std::optional<std::chrono::duration<double>> remaining;
  if (time_budget) remaining = *time_budget - (Clock::now() - start);

  ExactSearch search(app, net, remaining);
  search.seed_upper_bound(heuristic.assignment.total_energy, heuristic.assignment.node_of);
  SolveResult r = search.run();
  r.nodes_explored += heuristic.nodes_explored;
  return r;
}

SolveResult brute_force_optimal(const AppGraph& app, const NetGraph& net, Execution exec) {
  app.validate();
  double maps = 1.0;
  for (int t = 0; t < app.size(); ++t) maps *= net.size();
  if (maps > 1e7) {
    throw TooLarge("brute force needs M^N <= 1e7 assignments, instance has " + std::to_string(maps));
  }
  const auto best = exec == Execution::parallel ? enumerate_parallel(app, net)
                                                : enumerate_serial(app, net);
  if (!best) throw Infeasible("no assignment satisfies the node capacities");
  SolveResult r;
  r.assignment = evaluate_assignment(app, net, decode_assignment(best->index, app.size(), net.size()));
  r.objective = r.assignment.total_energy;
  r.lower_bound = r.objective;
  r.nodes_explored = static_cast<long>(maps);
  return r;
}

}  // namespace iiote::placement
