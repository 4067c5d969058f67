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

// Serial reference vs OpenMP kernels.

#include <vector>

#include <benchmark/benchmark.h>

#include "iiote/learning/kernels.hpp"
#include "iiote/learning/problem.hpp"
#include "iiote/learning/topology.hpp"
#include "iiote/nbiot/monte_carlo.hpp"
#include "iiote/placement/generators.hpp"
#include "iiote/placement/kernels.hpp"

using namespace iiote;
using learning::RealVector;

namespace {

void BM_PowOracleSerial(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(nbiot::pow_latency_oracle_serial(5, 2.0, state.range(0), Seed(1)));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_PowOracleParallel(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(nbiot::pow_latency_oracle_parallel(5, 2.0, state.range(0), Seed(1)));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

struct PlacementCase {
  placement::AppGraph app;
  placement::NetGraph net;
  explicit PlacementCase(int nodes) {
    app = placement::generate_application(placement::AppShape::wide, 5, Seed(11));
    net = placement::generate_network(nodes, Seed(11));
  }
};

void BM_EnumerateSerial(benchmark::State& state) {
  const PlacementCase c(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(placement::enumerate_serial(c.app, c.net));
}

void BM_EnumerateParallel(benchmark::State& state) {
  const PlacementCase c(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(placement::enumerate_parallel(c.app, c.net));
}

struct LearningCase {
  std::vector<learning::LocalProblem> problems;
  learning::Topology topology;
  std::vector<RealVector> visible, duals, models;
  std::vector<int> heads;
  explicit LearningCase(int workers)
      : problems(learning::synthetic_linear_regression(workers, 14, 20, 0.1, Seed(3))),
        topology(learning::build_topology(workers, learning::TopologyKind::bipartite, Seed(3))),
        visible(workers, RealVector::Zero(14)),
        duals(topology.edges().size(), RealVector::Zero(14)),
        models(workers, RealVector::Zero(14)),
        heads(topology.heads()) {}
  learning::GroupUpdate update() const { return {heads, problems, &topology, visible, duals, 1.0}; }
};

void BM_PrimalGroupSerial(benchmark::State& state) {
  LearningCase c(static_cast<int>(state.range(0)));
  for (auto _ : state) learning::primal_group_serial(c.update(), c.models);
}

void BM_PrimalGroupParallel(benchmark::State& state) {
  LearningCase c(static_cast<int>(state.range(0)));
  for (auto _ : state) learning::primal_group_parallel(c.update(), c.models);
}

}  // namespace

BENCHMARK(BM_PowOracleSerial)->Arg(1 << 16)->Arg(1 << 20);
BENCHMARK(BM_PowOracleParallel)->Arg(1 << 16)->Arg(1 << 20);
BENCHMARK(BM_EnumerateSerial)->Arg(6)->Arg(9);
BENCHMARK(BM_EnumerateParallel)->Arg(6)->Arg(9);
BENCHMARK(BM_PrimalGroupSerial)->Arg(18)->Arg(200);
BENCHMARK(BM_PrimalGroupParallel)->Arg(18)->Arg(200);

BENCHMARK_MAIN();
