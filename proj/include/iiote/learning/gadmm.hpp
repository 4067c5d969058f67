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

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "iiote/core/random.hpp"
#include "iiote/learning/comm_energy.hpp"
#include "iiote/learning/problem.hpp"
#include "iiote/learning/quantizer.hpp"
#include "iiote/learning/topology.hpp"

namespace iiote::learning {

enum class Variant { ps_admm, gadmm, d_gadmm, ggadmm, c_ggadmm, cq_ggadmm };

std::string to_string(Variant v);
Variant parse_variant(const std::string& name);

enum class Execution { serial, parallel };

struct RunConfig {
  Variant variant = Variant::ggadmm;
  double rho = 1.0;
  std::optional<QuantizerConfig> quantizer;  // cq-ggadmm only
  std::optional<CensorSchedule> censor;      // c-ggadmm and cq-ggadmm
  CommEnergyModel energy;
  long iterations = 1000;
  Seed seed{};
  Execution execution = Execution::parallel;
};

struct TraceRow {
  long iteration = 0;  // 1-based
  double objective = 0.0;
  double objective_error = 0.0;
  double bits_cum = 0.0;
  double joules_cum = 0.0;
  long censored_cum = 0;
  long scheduled_cum = 0;  // transmissions scheduled, censored or not
  double residual = 0.0;   // sum over constraint edges of ||theta_l - theta_r||
  int max_phase_transmitters = 0;
};

struct TrainingTrace {
  Variant variant = Variant::ggadmm;
  double optimum = 0.0;  // centralized objective value
  std::vector<TraceRow> rows;
  std::vector<RealVector> final_models;

  // First iteration k such that every row from k on has error < target.
  std::optional<long> iterations_to(double target) const;
  // Cumulative Joules at iterations_to(target).
  std::optional<double> joules_to(double target) const;
};

// Runs one of the algorithm variants. Static chain variants require a chain
// topology; d-gadmm re-chains every topology.coherence() iterations.
// ps-admm ignores the topology edges and uses a star around a server.
// Throws ConfigMismatch when variant and arguments disagree.
TrainingTrace run(const RunConfig& config, std::span<const LocalProblem> problems,
                  const Topology& topology);

}  // namespace iiote::learning
