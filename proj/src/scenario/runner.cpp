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

#include "iiote/scenario/runner.hpp"

#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <numeric>
#include <ostream>

#include "iiote/core/csv.hpp"
#include "iiote/learning/problem.hpp"
#include "iiote/learning/topology.hpp"
#include "iiote/placement/generators.hpp"
#include "iiote/placement/serialization.hpp"

namespace iiote::scenario {

namespace fs = std::filesystem;

namespace {

// Sub-seeds of the scenario seed.
constexpr std::uint64_t kProblemOffset = 0;
constexpr std::uint64_t kTopologyOffset = 1;
constexpr std::uint64_t kGainOffset = 2;
constexpr std::uint64_t kNetworkOffset = 3;

struct LearningSetup {
  std::vector<learning::LocalProblem> problems;
  learning::Topology topology;
  learning::RunConfig config;
};

LearningSetup learning_setup(const LearningBlock& b, std::uint64_t seed) {
  auto problems = learning::synthetic_linear_regression(b.workers, b.dim, b.samples, b.noise,
                                                        Seed(seed + kProblemOffset), b.reg);
  auto topo = learning::build_topology(b.workers, b.topology, Seed(seed + kTopologyOffset), b.mean_degree);
  if (b.variant == learning::Variant::d_gadmm) topo.set_coherence(b.coherence);
  auto config = run_config(b, seed);
  config.energy.gains =
      learning::CommEnergyModel::with_random_gains(b.workers, Seed(seed + kGainOffset), b.gain_base).gains;
  return {std::move(problems), std::move(topo), std::move(config)};
}

void trace_fields(CsvWriter& csv, const learning::TraceRow& r) {
  csv.field(r.iteration)
      .field(r.objective)
      .field(r.objective_error)
      .field(r.bits_cum)
      .field(r.joules_cum)
      .field(r.censored_cum);
}

const std::vector<std::string> kTraceHeader{"iter",     "objective",  "objective_error",
                                            "bits_cum", "joules_cum", "censored_cum"};

double elapsed_ms(std::chrono::steady_clock::time_point since) {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - since).count();
}

std::string resolve(const Scenario& s, const std::string& path) {
  const fs::path p(path);
  return p.is_absolute() ? p.string() : (fs::path(s.base_dir) / p).string();
}

std::ofstream open_output(const std::string& path) {
  const auto parent = fs::path(path).parent_path();
  if (!parent.empty()) fs::create_directories(parent);
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(path + ": cannot open for writing");
  return out;
}

std::string point_path(const std::string& base, const std::string& parameter, double value) {
  const fs::path p(base);
  auto name = p.stem().string() + "_" + parameter + "_" + format_double(value) + p.extension().string();
  return (p.parent_path() / name).string();
}

}  // namespace

void write_learning_csv(std::ostream& out, const learning::TrainingTrace& trace) {
  CsvWriter csv(out);
  csv.header(kTraceHeader);
  for (const auto& r : trace.rows) {
    trace_fields(csv, r);
    csv.end_row();
  }
}

std::vector<PlacementRow> run_placement(const Scenario& s) {
  const auto& b = s.placement;
  const auto budget = std::chrono::duration<double>(b.time_budget_s);
  auto solve = [&](const placement::AppGraph& app, const placement::NetGraph& net, std::uint64_t seed) {
    PlacementRow row;
    row.seed = seed;
    auto start = std::chrono::steady_clock::now();
    const auto heur = placement::solve_heuristic(app, net);
    row.t_heur_ms = elapsed_ms(start);
    start = std::chrono::steady_clock::now();
    const auto opt = placement::solve_optimal(app, net, budget);
    row.t_opt_ms = elapsed_ms(start);
    row.e_heur = heur.assignment.total_energy;
    row.e_opt = opt.assignment.total_energy;
    return row;
  };

  if (b.instance) {
    const auto inst = placement::read_instance(resolve(s, *b.instance));
    return {solve(inst.app, inst.net, s.seed)};
  }
  std::vector<PlacementRow> rows;
  const long max_attempts = 100L * b.instances;
  long attempt = 0;
  for (; attempt < max_attempts && static_cast<int>(rows.size()) < b.instances; ++attempt) {
    const std::uint64_t seed = s.seed + static_cast<std::uint64_t>(attempt);
    const auto net = placement::generate_network(b.nodes, Seed(seed));
    const auto app = placement::generate_application(b.shape, b.components, Seed(seed));
    try {
      rows.push_back(solve(app, net, seed));
    } catch (const Infeasible&) {
      // Capacity-infeasible draw; move on to the next seed.
    }
  }
  if (static_cast<int>(rows.size()) < b.instances) {
    throw Infeasible("placement: only " + std::to_string(rows.size()) + " of " +
                     std::to_string(b.instances) + " generated instances were feasible after " +
                     std::to_string(attempt) + " seeds (placement.nodes = " + std::to_string(b.nodes) +
                     ", placement.components = " + std::to_string(b.components) + ")");
  }
  return rows;
}

void write_placement_csv(std::ostream& out, const std::vector<PlacementRow>& rows, bool timing) {
  CsvWriter csv(out);
  csv.header({"seed", "E_opt", "E_heur", "ratio", "t_opt_ms", "t_heur_ms"});
  for (const auto& r : rows) {
    csv.field(static_cast<unsigned long>(r.seed)).field(r.e_opt).field(r.e_heur).field(r.e_opt / r.e_heur);
    if (timing) {
      csv.field(r.t_opt_ms).field(r.t_heur_ms);
    } else {
      csv.field("NA").field("NA");
    }
    csv.end_row();
  }
}

placement::AppGraph learning_task_graph(const learning::Topology& topo) {
  placement::AppGraph app;
  app.shape = placement::AppShape::custom;
  app.components.push_back({0, "data-processing", 2.0, 1.0, 1.0});
  for (int w = 0; w < topo.size(); ++w) {
    const bool head = topo.role(w) == learning::Role::head;
    const int id = w + 1;
    if (head) {
      app.components.push_back({id, "aggregation-" + std::to_string(w), 3.0, 0.5, 1.0});
    } else {
      app.components.push_back({id, "training-" + std::to_string(w), 2.0, 1.0, 2.0});
      app.edges.push_back({0, id});
    }
  }
  for (const auto& e : topo.edges()) {
    const bool left_tail = topo.role(e.left) == learning::Role::tail;
    const int tail = left_tail ? e.left : e.right;
    const int head = left_tail ? e.right : e.left;
    app.edges.push_back({tail + 1, head + 1});
  }
  app.validate();
  return app;
}

bool IntegratedReport::totals_consistent(double rel_tol) const {
  const double records = ledger.empty() ? 0.0 : static_cast<double>(ledger.back().records_cum);
  const double expected = assignment.total_energy + learning_energy +
                          records * per_record.total_energy().value();
  return std::abs(total_energy - expected) <= rel_tol * std::max(1.0, std::abs(expected));
}

IntegratedReport run_integrated(const Scenario& s) {
  if (s.kind != Kind::integrated) throw ConfigMismatch("run_integrated: scenario kind is " + to_string(s.kind));
  auto setup = learning_setup(s.learning, s.seed);
  IntegratedReport rep;
  rep.app = learning_task_graph(setup.topology);
  rep.net = placement::generate_network(s.integrated.nodes, Seed(s.seed + kNetworkOffset));
  try {
    rep.assignment = placement::solve_heuristic(rep.app, rep.net).assignment;
  } catch (const Infeasible& e) {
    const double need = std::accumulate(rep.app.components.begin(), rep.app.components.end(), 0.0,
                                        [](double acc, const auto& c) { return acc + c.resources; });
    const double have = std::accumulate(rep.net.nodes().begin(), rep.net.nodes().end(), 0.0,
                                        [](double acc, const auto& n) { return acc + n.resources; });
    throw Infeasible("integrated placement of " + std::to_string(rep.app.size()) + " components (total R_t " +
                     format_double(need) + ") onto integrated.nodes = " + std::to_string(rep.net.size()) +
                     " (total R_n " + format_double(have) + "): " + e.what());
  }

  const int workers = setup.topology.size();
  rep.host_of_worker.resize(static_cast<std::size_t>(workers));
  for (int w = 0; w < workers; ++w) {
    const int host = rep.assignment.node_of[static_cast<std::size_t>(w + 1)];
    rep.host_of_worker[static_cast<std::size_t>(w)] = host;
    const bool wired = rep.net.node(host).kind == placement::NodeKind::wired;
    setup.config.energy.gains[static_cast<std::size_t>(w)] =
        s.learning.gain_base * (wired ? s.integrated.wired_gain : s.integrated.wireless_gain);
  }
  rep.trace = learning::run(setup.config, setup.problems, setup.topology);

  if (s.model.dlt.enabled) rep.per_record = nbiot::evaluate(s.model);
  const double rec_latency = s.model.dlt.enabled ? rep.per_record.total_latency().value() : 0.0;
  const double rec_energy = s.model.dlt.enabled ? rep.per_record.total_energy().value() : 0.0;
  LedgerRow cum;
  for (const auto& row : rep.trace.rows) {
    cum.iteration = row.iteration;
    if (s.model.dlt.enabled && row.iteration % s.integrated.ledger_period == 0) {
      ++cum.records_cum;
      cum.latency_cum = rec_latency * static_cast<double>(cum.records_cum);
      cum.energy_cum = rec_energy * static_cast<double>(cum.records_cum);
    }
    rep.ledger.push_back(cum);
  }

  rep.placement_energy = rep.assignment.total_energy;
  rep.learning_energy = rep.trace.rows.empty() ? 0.0 : rep.trace.rows.back().joules_cum;
  rep.ledger_energy = rep.ledger.empty() ? 0.0 : rep.ledger.back().energy_cum;
  rep.total_energy = rep.placement_energy + rep.learning_energy + rep.ledger_energy;
  return rep;
}

void write_integrated_csv(std::ostream& out, const IntegratedReport& report) {
  CsvWriter csv(out);
  auto header = kTraceHeader;
  for (const char* h : {"ledger_records_cum", "ledger_latency_cum", "ledger_joules_cum", "total_joules_cum"}) {
    header.emplace_back(h);
  }
  csv.header(header);
  for (std::size_t i = 0; i < report.trace.rows.size(); ++i) {
    const auto& r = report.trace.rows[i];
    const auto& l = report.ledger[i];
    trace_fields(csv, r);
    csv.field(l.records_cum)
        .field(l.latency_cum)
        .field(l.energy_cum)
        .field(report.placement_energy + r.joules_cum + l.energy_cum);
    csv.end_row();
  }
}

namespace {

std::string run_point(const Scenario& s, const std::string& path) {
  switch (s.kind) {
    case Kind::learning: {
      const auto setup = learning_setup(s.learning, s.seed);
      const auto trace = learning::run(setup.config, setup.problems, setup.topology);
      auto out = open_output(path);
      write_learning_csv(out, trace);
      break;
    }
    case Kind::placement: {
      const auto rows = run_placement(s);
      auto out = open_output(path);
      write_placement_csv(out, rows, s.placement.report_timing);
      break;
    }
    case Kind::integrated: {
      const auto report = run_integrated(s);
      auto out = open_output(path);
      write_integrated_csv(out, report);
      break;
    }
    case Kind::radio: break;
  }
  return path;
}

}  // namespace

std::vector<std::string> run_scenario(const Scenario& s) {
  validate(s);
  const auto base = resolve(s, s.output);
  if (s.kind == Kind::radio) {
    const std::string parameter = s.sweep ? s.sweep->parameter : "radio.t";
    const std::vector<double> values = s.sweep ? s.sweep->values : std::vector<double>{s.model.radio.t};
    const auto rows = nbiot::sweep(s.model, parameter, values);
    auto out = open_output(base);
    nbiot::write_sweep_csv(out, parameter, rows);
    return {base};
  }
  if (!s.sweep) return {run_point(s, base)};
  std::vector<std::string> written;
  for (double v : s.sweep->values) {
    written.push_back(run_point(with_parameter(s, s.sweep->parameter, v), point_path(base, s.sweep->parameter, v)));
  }
  return written;
}

}  // namespace iiote::scenario
