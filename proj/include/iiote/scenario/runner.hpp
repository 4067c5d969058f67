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

#include <iosfwd>
#include <string>
#include <vector>

#include "iiote/learning/gadmm.hpp"
#include "iiote/placement/solvers.hpp"
#include "iiote/scenario/scenario.hpp"

namespace iiote::scenario {

struct LedgerRow {
  long iteration = 0;
  long records_cum = 0;
  double latency_cum = 0.0;  // s
  double energy_cum = 0.0;   // J, ledger and radio parts of each record
};

struct IntegratedReport {
  placement::AppGraph app;
  placement::NetGraph net;
  placement::Assignment assignment;
  std::vector<int> host_of_worker;
  learning::TrainingTrace trace;
  std::vector<LedgerRow> ledger;
  nbiot::LatencyEnergyBreakdown per_record;
  double placement_energy = 0.0;
  double learning_energy = 0.0;
  double ledger_energy = 0.0;
  double total_energy = 0.0;

  // total_energy == placement E_t + learning Joules + records * per-record energy.
  bool totals_consistent(double rel_tol = 1e-12) const;
};

// Task graph for a learning topology: component 0 is the data-processing
// source, then one component per worker ("training-<w>" for tails,
// "aggregation-<w>" for heads). Edges run source -> training and
// training -> aggregation along the topology.
placement::AppGraph learning_task_graph(const learning::Topology& topo);

IntegratedReport run_integrated(const Scenario& s);

// Per-kind CSV writers. Columns:
//   learning:   iter,objective,objective_error,bits_cum,joules_cum,censored_cum
//   placement:  seed,E_opt,E_heur,ratio,t_opt_ms,t_heur_ms
//   integrated: iter,objective,objective_error,bits_cum,joules_cum,censored_cum,
//               ledger_records_cum,ledger_latency_cum,ledger_joules_cum,total_joules_cum
void write_learning_csv(std::ostream& out, const learning::TrainingTrace& trace);
void write_integrated_csv(std::ostream& out, const IntegratedReport& report);

struct PlacementRow {
  std::uint64_t seed = 0;
  double e_opt = 0.0;
  double e_heur = 0.0;
  double t_opt_ms = 0.0;
  double t_heur_ms = 0.0;
};
std::vector<PlacementRow> run_placement(const Scenario& s);
void write_placement_csv(std::ostream& out, const std::vector<PlacementRow>& rows, bool timing);

// Runs the scenario and writes its CSVs. Returns the paths written, in order.
// The radio kind writes one file with one row per sweep value; other kinds
// write one file per sweep point.
std::vector<std::string> run_scenario(const Scenario& s);

}  // namespace iiote::scenario
