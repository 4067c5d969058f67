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

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "iiote/core/error.hpp"
#include "iiote/learning/gadmm.hpp"
#include "iiote/learning/topology.hpp"
#include "iiote/nbiot/model.hpp"
#include "iiote/placement/instance.hpp"

namespace iiote::scenario {

// Malformed scenario text: bad YAML, unknown keys, wrong value types.
class ParseError : public Error {
 public:
  using Error::Error;
};

// Well-formed scenario whose values break an invariant. Holds one message per
// offending field.
class ValidationError : public Error {
 public:
  explicit ValidationError(std::vector<std::string> problems);
  const std::vector<std::string>& problems() const { return problems_; }

 private:
  std::vector<std::string> problems_;
};

enum class Kind { learning, placement, radio, integrated };
std::string to_string(Kind k);

struct LearningBlock {
  learning::Variant variant = learning::Variant::ggadmm;
  learning::TopologyKind topology = learning::TopologyKind::bipartite;
  int workers = 10;
  int dim = 5;
  int samples = 50;
  double noise = 0.1;
  double reg = 0.0;
  double mean_degree = 3.0;
  long coherence = 10;  // re-chaining period, d-gadmm only
  double rho = 1.0;
  long iterations = 300;
  int bits = 2;          // cq-ggadmm
  double xi0 = 0.1;      // c-ggadmm, cq-ggadmm
  double alpha = 0.9;
  double bandwidth_hz = 1e6;
  double slot_s = 1e-3;
  double noise_psd = 1e-12;
  double gain_base = 1e-6;
};

struct PlacementBlock {
  placement::AppShape shape = placement::AppShape::wide;
  int nodes = 8;
  int components = 6;
  int instances = 10;
  std::optional<std::string> instance;  // fixed instance file, resolved against the scenario dir
  double time_budget_s = 60.0;
  bool report_timing = false;
};

struct IntegratedBlock {
  int nodes = 8;
  long ledger_period = 1;
  double wired_gain = 1.0;     // gain multiplier for workers hosted on wired nodes
  double wireless_gain = 0.5;  // and on wireless nodes
};

struct Sweep {
  std::string parameter;  // "<block>.<field>"
  std::vector<double> values;
};

struct Scenario {
  std::uint64_t seed = 1;
  Kind kind = Kind::learning;
  std::string output;  // CSV path; sweep points get a suffix
  std::optional<Sweep> sweep;
  LearningBlock learning;
  PlacementBlock placement;
  nbiot::ModelConfig model;
  IntegratedBlock integrated;
  std::string base_dir;  // directory of the scenario file
};

Scenario parse_scenario(const std::string& path);
// `origin` names the source in error messages; relative paths resolve
// against `base_dir`.
Scenario parse_scenario_text(const std::string& text, const std::string& origin = "<scenario>",
                             const std::string& base_dir = ".");

// Throws ValidationError listing every violated field.
void validate(const Scenario& s);

// Returns a copy with `parameter` set to `value`. Throws ValidationError for
// unknown parameters.
Scenario with_parameter(const Scenario& s, const std::string& parameter, double value);
bool has_sweep_parameter(Kind kind, const std::string& parameter);

learning::RunConfig run_config(const LearningBlock& b, std::uint64_t seed);

}  // namespace iiote::scenario
