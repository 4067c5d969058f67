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

#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "iiote/core/error.hpp"
#include "iiote/scenario/runner.hpp"
#include "iiote/scenario/scenario.hpp"

using namespace iiote;
using namespace iiote::scenario;
namespace fs = std::filesystem;

namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

std::vector<std::string> lines(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  for (std::string l; std::getline(in, l);) out.push_back(l);
  return out;
}

std::string column_prefix(const std::string& line, int columns) {
  std::size_t pos = 0;
  for (int i = 0; i < columns && pos != std::string::npos; ++i) pos = line.find(',', pos + 1);
  return line.substr(0, pos);
}

fs::path scratch(const std::string& name) {
  const auto dir = fs::temp_directory_path() / "iiote_scenario_tests" / name;
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

Scenario parse_in(const fs::path& dir, const std::string& text) {
  return parse_scenario_text(text, "test.yaml", dir.string());
}

}  // namespace

TEST_CASE("minimal learning scenario takes the defaults") {
  const auto s = parse_scenario_text("kind: learning\noutput: out.csv\n");
  CHECK(s.kind == Kind::learning);
  CHECK(s.seed == 1);
  CHECK(s.learning.variant == learning::Variant::ggadmm);
  CHECK(s.learning.workers == 10);
  CHECK(s.learning.rho == 1.0);
  CHECK(s.learning.alpha == 0.9);
  CHECK_FALSE(s.sweep.has_value());
}

TEST_CASE("negative K names the field") {
  try {
    parse_scenario_text("kind: radio\noutput: r.csv\nradio:\n  K: -3\n");
    FAIL("expected ValidationError");
  } catch (const ValidationError& e) {
    REQUIRE_FALSE(e.problems().empty());
    CHECK(e.problems()[0].find("radio.K") != std::string::npos);
  }
}

TEST_CASE("unknown top-level key is a parse error naming the key") {
  try {
    parse_scenario_text("kind: learning\noutput: o.csv\nlerning:\n  rho: 2\n");
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    const std::string msg = e.what();
    CHECK(msg.find("lerning") != std::string::npos);
    CHECK(msg.find(":3:") != std::string::npos);
  }
}

TEST_CASE("field errors carry line numbers") {
  try {
    parse_scenario_text("kind: learning\noutput: o.csv\nlearning:\n  workers: 4\n  rho: fast\n");
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    const std::string msg = e.what();
    CHECK(msg.find("learning.rho") != std::string::npos);
    CHECK(msg.find(":5:") != std::string::npos);
  }
  CHECK_THROWS_AS(parse_scenario_text("kind: learning\noutput: o.csv\nlearning: {variant: sgd}\n"), ParseError);
  CHECK_THROWS_AS(parse_scenario_text("kind: teleport\noutput: o.csv\n"), ParseError);
  CHECK_THROWS_AS(parse_scenario_text("output: o.csv\n"), ParseError);
  CHECK_THROWS_AS(parse_scenario_text("kind: [learning\n"), ParseError);
}

TEST_CASE("sweep parameter must exist in a block of the scenario kind") {
  CHECK_THROWS_AS(parse_scenario_text("kind: learning\noutput: o.csv\nsweep: {parameter: learning.speed, values: [1]}\n"),
                  ValidationError);
  CHECK_THROWS_AS(parse_scenario_text("kind: learning\noutput: o.csv\nsweep: {parameter: radio.t, values: [1]}\n"),
                  ValidationError);
  CHECK_NOTHROW(parse_scenario_text("kind: radio\noutput: o.csv\nsweep: {parameter: radio.t, values: [0.1, 0.2]}\n"));
  // Each sweep value is validated.
  CHECK_THROWS_AS(parse_scenario_text("kind: radio\noutput: o.csv\nsweep: {parameter: radio.K, values: [48, 0]}\n"),
                  ValidationError);
}

TEST_CASE("chain-only variants need a chain") {
  CHECK_THROWS_AS(parse_scenario_text("kind: learning\noutput: o.csv\nlearning: {variant: gadmm}\n"), ValidationError);
  CHECK_NOTHROW(parse_scenario_text("kind: learning\noutput: o.csv\nlearning: {variant: gadmm, topology: chain}\n"));
}

TEST_CASE("learning csv schema and determinism") {
  const auto dir = scratch("learning");
  const auto s = parse_in(dir, "seed: 4\nkind: learning\noutput: l.csv\nlearning: {variant: cq-ggadmm, workers: 6, iterations: 40}\n");
  const auto paths = run_scenario(s);
  REQUIRE(paths.size() == 1);
  const auto first = slurp(paths[0]);
  const auto rows = lines(first);
  REQUIRE(rows.size() == 41);
  CHECK(rows[0] == "iter,objective,objective_error,bits_cum,joules_cum,censored_cum");
  run_scenario(s);
  CHECK(slurp(paths[0]) == first);
}

TEST_CASE("placement csv has one row per instance") {
  const auto dir = scratch("placement");
  const auto s = parse_in(dir, "seed: 100\nkind: placement\noutput: p.csv\nplacement: {nodes: 6, components: 5, instances: 10}\n");
  const auto paths = run_scenario(s);
  const auto rows = lines(slurp(paths[0]));
  REQUIRE(rows.size() == 11);
  CHECK(rows[0] == "seed,E_opt,E_heur,ratio,t_opt_ms,t_heur_ms");
  for (std::size_t i = 1; i < rows.size(); ++i) CHECK(rows[i].find(",NA,NA") != std::string::npos);
}

TEST_CASE("sweep writes one file per point") {
  const auto dir = scratch("sweep");
  const auto s = parse_in(dir,
                          "kind: learning\noutput: out/l.csv\nlearning: {workers: 4, iterations: 5}\n"
                          "sweep: {parameter: learning.rho, values: [0.5, 2]}\n");
  const auto paths = run_scenario(s);
  REQUIRE(paths.size() == 2);
  CHECK(fs::path(paths[0]).filename() == "l_learning.rho_0.5.csv");
  CHECK(fs::path(paths[1]).filename() == "l_learning.rho_2.csv");
  CHECK(slurp(paths[0]) != slurp(paths[1]));
}

TEST_CASE("radio sweep writes one row per value") {
  const auto dir = scratch("radio");
  const auto s = parse_in(dir, "kind: radio\noutput: r.csv\nsweep: {parameter: radio.t, values: [0.08, 0.16, 0.32]}\n");
  const auto paths = run_scenario(s);
  REQUIRE(paths.size() == 1);
  CHECK(lines(slurp(paths[0])).size() == 4);
}

TEST_CASE("task graph mirrors the learning roles") {
  const auto topo = learning::build_topology(6, learning::TopologyKind::chain, Seed(1));
  const auto app = learning_task_graph(topo);
  REQUIRE(app.size() == 7);
  CHECK(app.components[0].name == "data-processing");
  CHECK(app.components[1].name == "aggregation-0");
  CHECK(app.components[2].name == "training-1");
  for (const auto& e : app.edges) {
    if (e.from == 0) {
      CHECK(app.components[e.to].name.rfind("training", 0) == 0);
    } else {
      CHECK(app.components[e.from].name.rfind("training", 0) == 0);
      CHECK(app.components[e.to].name.rfind("aggregation", 0) == 0);
    }
  }
  CHECK(app.edges.size() == 3 + 5);
}

TEST_CASE("integrated totals") {
  const std::string base =
      "seed: 3\nkind: integrated\noutput: i.csv\n"
      "learning: {workers: 4, dim: 3, iterations: 60}\n"
      "integrated: {nodes: 8, ledger_period: 3}\n";
  const auto on = run_integrated(parse_scenario_text(base));
  CHECK(on.totals_consistent());
  CHECK(on.ledger.back().records_cum == 20);
  CHECK(on.total_energy > on.placement_energy + on.learning_energy);

  const auto off = run_integrated(parse_scenario_text(base + "dlt: {enabled: false}\n"));
  CHECK(off.totals_consistent());
  CHECK(off.total_energy == off.placement_energy + off.learning_energy);
  CHECK(off.ledger_energy == 0.0);
}

TEST_CASE("placement does not change the learning math") {
  const auto dir = scratch("integrated");
  const std::string learning_block = "learning: {workers: 4, dim: 3, iterations: 80}\n";
  const auto standalone = run_scenario(parse_in(dir, "seed: 5\nkind: learning\noutput: a.csv\n" + learning_block));
  const auto integrated =
      run_scenario(parse_in(dir, "seed: 5\nkind: integrated\noutput: b.csv\nintegrated: {nodes: 8}\n" + learning_block));
  const auto a = lines(slurp(standalone[0]));
  const auto b = lines(slurp(integrated[0]));
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 1; i < a.size(); ++i) {
    // iter, objective, objective_error, bits_cum agree; energies differ with the hosts.
    CHECK(column_prefix(a[i], 4) == column_prefix(b[i], 4));
  }
}
