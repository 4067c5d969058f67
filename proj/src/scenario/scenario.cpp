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

#include "iiote/scenario/scenario.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <set>
#include <sstream>

#include <yaml-cpp/yaml.h>

#include "iiote/core/csv.hpp"

namespace iiote::scenario {

namespace {

std::string join(const std::vector<std::string>& items) {
  std::string out;
  for (const auto& s : items) out += (out.empty() ? "" : "; ") + s;
  return out;
}

}  // namespace

ValidationError::ValidationError(std::vector<std::string> problems)
    : Error(join(problems)), problems_(std::move(problems)) {}

std::string to_string(Kind k) {
  switch (k) {
    case Kind::learning: return "learning";
    case Kind::placement: return "placement";
    case Kind::radio: return "radio";
    case Kind::integrated: return "integrated";
  }
  return "?";
}

namespace {

using NumericSetter = std::function<void(Scenario&, double)>;

long as_integer(double v, const std::string& name) {
  if (!std::isfinite(v) || v != std::floor(v)) {
    throw ValidationError({name + ": expected an integer, got " + format_double(v)});
  }
  return static_cast<long>(v);
}

// Numeric fields of the learning, placement and integrated blocks.
const std::map<std::string, NumericSetter>& numeric_fields() {
  static const std::map<std::string, NumericSetter> table = [] {
    std::map<std::string, NumericSetter> m;
#define IIOTE_REAL(block, field) m[#block "." #field] = [](Scenario& s, double v) { s.block.field = v; };
#define IIOTE_INT(block, field)                                        \
  m[#block "." #field] = [](Scenario& s, double v) {                   \
    s.block.field = static_cast<decltype(s.block.field)>(as_integer(v, #block "." #field)); \
  };
    IIOTE_INT(learning, workers)
    IIOTE_INT(learning, dim)
    IIOTE_INT(learning, samples)
    IIOTE_REAL(learning, noise)
    IIOTE_REAL(learning, reg)
    IIOTE_REAL(learning, mean_degree)
    IIOTE_INT(learning, coherence)
    IIOTE_REAL(learning, rho)
    IIOTE_INT(learning, iterations)
    IIOTE_INT(learning, bits)
    IIOTE_REAL(learning, xi0)
    IIOTE_REAL(learning, alpha)
    IIOTE_REAL(learning, bandwidth_hz)
    IIOTE_REAL(learning, slot_s)
    IIOTE_REAL(learning, noise_psd)
    IIOTE_REAL(learning, gain_base)
    IIOTE_INT(placement, nodes)
    IIOTE_INT(placement, components)
    IIOTE_INT(placement, instances)
    IIOTE_REAL(placement, time_budget_s)
    IIOTE_INT(integrated, nodes)
    IIOTE_INT(integrated, ledger_period)
    IIOTE_REAL(integrated, wired_gain)
    IIOTE_REAL(integrated, wireless_gain)
#undef IIOTE_REAL
#undef IIOTE_INT
    return m;
  }();
  return table;
}

std::string block_of(const std::string& parameter) {
  const auto dot = parameter.find('.');
  return dot == std::string::npos ? std::string() : parameter.substr(0, dot);
}

std::set<std::string> blocks_for(Kind kind) {
  switch (kind) {
    case Kind::learning: return {"learning"};
    case Kind::placement: return {"placement"};
    case Kind::radio: return {"radio", "power", "dlt"};
    case Kind::integrated: return {"learning", "integrated", "radio", "power", "dlt"};
  }
  return {};
}

void set_numeric(Scenario& s, const std::string& name, double value) {
  const auto block = block_of(name);
  if (block == "radio" || block == "power" || block == "dlt") {
    try {
      nbiot::set_parameter(s.model, name, value);
    } catch (const InvalidArgument& e) {
      throw ValidationError({e.what()});
    }
    return;
  }
  const auto it = numeric_fields().find(name);
  if (it == numeric_fields().end()) throw ValidationError({name + ": unknown parameter"});
  it->second(s, value);
}

bool is_numeric(const std::string& name) {
  return numeric_fields().count(name) || nbiot::has_parameter(name);
}

// ---- YAML reading -------------------------------------------------------

struct Reader {
  std::string origin;

  [[noreturn]] void fail(const YAML::Node& node, const std::string& path, const std::string& what) const {
    std::string where = origin + ":";
    if (node.IsDefined() && node.Mark().line >= 0) where += std::to_string(node.Mark().line + 1) + ":";
    throw ParseError(where + " " + path + ": " + what);
  }

  template <typename T>
  T as(const YAML::Node& node, const std::string& path, const char* expected) const {
    if (!node.IsScalar()) fail(node, path, std::string("expected ") + expected);
    try {
      return node.as<T>();
    } catch (const YAML::Exception&) {
      fail(node, path, std::string("expected ") + expected + ", got '" + node.Scalar() + "'");
    }
  }

  void require_map(const YAML::Node& node, const std::string& path) const {
    if (!node.IsMap()) fail(node, path, "expected a mapping");
  }
};

void read_learning(const Reader& r, const YAML::Node& node, Scenario& s) {
  r.require_map(node, "learning");
  for (const auto& kv : node) {
    const auto key = kv.first.as<std::string>();
    const auto path = "learning." + key;
    if (key == "variant") {
      try {
        s.learning.variant = learning::parse_variant(r.as<std::string>(kv.second, path, "a string"));
      } catch (const InvalidArgument& e) {
        r.fail(kv.second, path, e.what());
      }
    } else if (key == "topology") {
      const auto v = r.as<std::string>(kv.second, path, "a string");
      if (v == "chain") {
        s.learning.topology = learning::TopologyKind::chain;
      } else if (v == "bipartite") {
        s.learning.topology = learning::TopologyKind::bipartite;
      } else {
        r.fail(kv.second, path, "expected 'chain' or 'bipartite', got '" + v + "'");
      }
    } else if (numeric_fields().count(path)) {
      set_numeric(s, path, r.as<double>(kv.second, path, "a number"));
    } else {
      r.fail(kv.first, path, "unknown key");
    }
  }
}

void read_placement(const Reader& r, const YAML::Node& node, Scenario& s) {
  r.require_map(node, "placement");
  for (const auto& kv : node) {
    const auto key = kv.first.as<std::string>();
    const auto path = "placement." + key;
    if (key == "shape") {
      try {
        s.placement.shape = placement::parse_shape(r.as<std::string>(kv.second, path, "a string"));
      } catch (const Error& e) {
        r.fail(kv.second, path, e.what());
      }
    } else if (key == "instance") {
      s.placement.instance = r.as<std::string>(kv.second, path, "a path");
    } else if (key == "report_timing") {
      s.placement.report_timing = r.as<bool>(kv.second, path, "true or false");
    } else if (numeric_fields().count(path)) {
      set_numeric(s, path, r.as<double>(kv.second, path, "a number"));
    } else {
      r.fail(kv.first, path, "unknown key");
    }
  }
}

void read_model_block(const Reader& r, const YAML::Node& node, const std::string& block, Scenario& s) {
  r.require_map(node, block);
  for (const auto& kv : node) {
    const auto key = kv.first.as<std::string>();
    const auto path = block + "." + key;
    if (path == "dlt.enabled") {
      s.model.dlt.enabled = r.as<bool>(kv.second, path, "true or false");
    } else if (path == "radio.couple_w_to_nprach") {
      s.model.radio.couple_w_to_nprach = r.as<bool>(kv.second, path, "true or false");
    } else if (nbiot::has_parameter(path)) {
      set_numeric(s, path, r.as<double>(kv.second, path, "a number"));
    } else {
      r.fail(kv.first, path, "unknown key");
    }
  }
}

void read_integrated(const Reader& r, const YAML::Node& node, Scenario& s) {
  r.require_map(node, "integrated");
  for (const auto& kv : node) {
    const auto key = kv.first.as<std::string>();
    const auto path = "integrated." + key;
    if (!numeric_fields().count(path)) r.fail(kv.first, path, "unknown key");
    set_numeric(s, path, r.as<double>(kv.second, path, "a number"));
  }
}

void read_sweep(const Reader& r, const YAML::Node& node, Scenario& s) {
  r.require_map(node, "sweep");
  Sweep sw;
  for (const auto& kv : node) {
    const auto key = kv.first.as<std::string>();
    if (key == "parameter") {
      sw.parameter = r.as<std::string>(kv.second, "sweep.parameter", "a string");
    } else if (key == "values") {
      if (!kv.second.IsSequence()) r.fail(kv.second, "sweep.values", "expected a list");
      for (std::size_t i = 0; i < kv.second.size(); ++i) {
        sw.values.push_back(
            r.as<double>(kv.second[i], "sweep.values[" + std::to_string(i) + "]", "a number"));
      }
    } else {
      r.fail(kv.first, "sweep." + key, "unknown key");
    }
  }
  if (sw.parameter.empty()) r.fail(node, "sweep.parameter", "missing");
  if (sw.values.empty()) r.fail(node, "sweep.values", "missing or empty");
  s.sweep = sw;
}

}  // namespace

bool has_sweep_parameter(Kind kind, const std::string& parameter) {
  return blocks_for(kind).count(block_of(parameter)) > 0 && is_numeric(parameter);
}

Scenario with_parameter(const Scenario& s, const std::string& parameter, double value) {
  if (!has_sweep_parameter(s.kind, parameter)) {
    throw ValidationError({"sweep.parameter: '" + parameter + "' is not a numeric field of a " +
                           to_string(s.kind) + " scenario"});
  }
  Scenario out = s;
  set_numeric(out, parameter, value);
  return out;
}

namespace {

void check(std::vector<std::string>& problems, bool ok, const std::string& field, const std::string& rule) {
  if (!ok) problems.push_back(field + ": must be " + rule);
}

void check_learning(const LearningBlock& b, std::vector<std::string>& p) {
  check(p, b.workers >= 2, "learning.workers", ">= 2");
  check(p, b.dim >= 1, "learning.dim", ">= 1");
  check(p, b.samples >= 1, "learning.samples", ">= 1");
  check(p, b.noise >= 0.0, "learning.noise", ">= 0");
  check(p, b.reg >= 0.0, "learning.reg", ">= 0");
  check(p, b.mean_degree >= 1.0, "learning.mean_degree", ">= 1");
  check(p, b.coherence >= 1, "learning.coherence", ">= 1");
  check(p, b.rho > 0.0, "learning.rho", "> 0");
  check(p, b.iterations >= 1, "learning.iterations", ">= 1");
  check(p, b.bits >= 1 && b.bits <= 32, "learning.bits", "in 1..32");
  check(p, b.xi0 >= 0.0, "learning.xi0", ">= 0");
  check(p, b.alpha > 0.0 && b.alpha < 1.0, "learning.alpha", "in (0, 1)");
  check(p, b.bandwidth_hz > 0.0, "learning.bandwidth_hz", "> 0");
  check(p, b.slot_s > 0.0, "learning.slot_s", "> 0");
  check(p, b.noise_psd > 0.0, "learning.noise_psd", "> 0");
  check(p, b.gain_base > 0.0, "learning.gain_base", "> 0");
  const bool chain_only = b.variant == learning::Variant::gadmm || b.variant == learning::Variant::d_gadmm;
  check(p, !chain_only || b.topology == learning::TopologyKind::chain, "learning.topology",
        "'chain' for " + learning::to_string(b.variant));
}

void check_placement(const PlacementBlock& b, std::vector<std::string>& p) {
  check(p, b.nodes >= 2, "placement.nodes", ">= 2");
  if (b.shape == placement::AppShape::custom && !b.instance) {
    p.push_back("placement.shape: 'custom' needs placement.instance");
  }
  const int min_components = b.shape == placement::AppShape::wide ? 3 : 2;
  check(p, b.instance || b.components >= min_components, "placement.components",
        ">= " + std::to_string(min_components) + " for shape " + placement::to_string(b.shape));
  check(p, b.instances >= 1, "placement.instances", ">= 1");
  check(p, b.time_budget_s > 0.0, "placement.time_budget_s", "> 0");
}

void check_integrated(const IntegratedBlock& b, std::vector<std::string>& p) {
  check(p, b.nodes >= 2, "integrated.nodes", ">= 2");
  check(p, b.ledger_period >= 1, "integrated.ledger_period", ">= 1");
  check(p, b.wired_gain > 0.0, "integrated.wired_gain", "> 0");
  check(p, b.wireless_gain > 0.0, "integrated.wireless_gain", "> 0");
}

void check_model(const nbiot::ModelConfig& m, std::vector<std::string>& p) {
  auto guarded = [&](auto&& fn) {
    try {
      fn();
    } catch (const Error& e) {
      p.push_back(e.what());
    }
  };
  guarded([&] { m.radio.validate(); });
  guarded([&] { m.power.validate(); });
  if (m.dlt.enabled) guarded([&] { m.dlt.validate(); });
}

void check_blocks(const Scenario& s, std::vector<std::string>& p) {
  const auto blocks = blocks_for(s.kind);
  if (blocks.count("learning")) check_learning(s.learning, p);
  if (blocks.count("placement")) check_placement(s.placement, p);
  if (blocks.count("integrated")) check_integrated(s.integrated, p);
  if (blocks.count("radio")) check_model(s.model, p);
}

}  // namespace

void validate(const Scenario& s) {
  std::vector<std::string> problems;
  if (s.output.empty()) problems.push_back("output: missing");
  check_blocks(s, problems);
  if (s.sweep) {
    if (!has_sweep_parameter(s.kind, s.sweep->parameter)) {
      problems.push_back("sweep.parameter: '" + s.sweep->parameter + "' is not a numeric field of a " +
                         to_string(s.kind) + " scenario");
    } else {
      for (double v : s.sweep->values) {
        std::vector<std::string> point;
        try {
          check_blocks(with_parameter(s, s.sweep->parameter, v), point);
        } catch (const ValidationError& e) {
          point = e.problems();
        }
        for (auto& msg : point) {
          problems.push_back("sweep " + s.sweep->parameter + "=" + format_double(v) + ": " + msg);
        }
      }
    }
  }
  if (!problems.empty()) throw ValidationError(problems);
}

Scenario parse_scenario_text(const std::string& text, const std::string& origin, const std::string& base_dir) {
  const Reader r{origin};
  YAML::Node root;
  try {
    root = YAML::Load(text);
  } catch (const YAML::ParserException& e) {
    throw ParseError(origin + ":" + std::to_string(e.mark.line + 1) + ": " + e.msg);
  }
  if (!root.IsMap()) throw ParseError(origin + ": expected a mapping at the top level");

  Scenario s;
  s.base_dir = base_dir;
  const auto kind = root["kind"];
  if (!kind) throw ParseError(origin + ": kind: missing");
  const auto k = r.as<std::string>(kind, "kind", "a string");
  if (k == "learning") {
    s.kind = Kind::learning;
  } else if (k == "placement") {
    s.kind = Kind::placement;
  } else if (k == "radio" || k == "radio-dlt") {
    s.kind = Kind::radio;
  } else if (k == "integrated") {
    s.kind = Kind::integrated;
  } else {
    r.fail(kind, "kind", "expected learning, placement, radio or integrated, got '" + k + "'");
  }

  for (const auto& kv : root) {
    const auto key = kv.first.as<std::string>();
    if (key == "kind") continue;
    if (key == "seed") {
      s.seed = r.as<std::uint64_t>(kv.second, "seed", "a non-negative integer");
    } else if (key == "output") {
      s.output = r.as<std::string>(kv.second, "output", "a path");
    } else if (key == "sweep") {
      read_sweep(r, kv.second, s);
    } else if (key == "learning") {
      read_learning(r, kv.second, s);
    } else if (key == "placement") {
      read_placement(r, kv.second, s);
    } else if (key == "radio" || key == "power" || key == "dlt") {
      read_model_block(r, kv.second, key, s);
    } else if (key == "integrated") {
      read_integrated(r, kv.second, s);
    } else {
      r.fail(kv.first, key, "unknown top-level key '" + key + "'");
    }
  }
  validate(s);
  return s;
}

Scenario parse_scenario(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError(path + ": cannot open scenario file");
  std::ostringstream text;
  text << in.rdbuf();
  const auto dir = std::filesystem::path(path).parent_path();
  return parse_scenario_text(text.str(), path, dir.empty() ? "." : dir.string());
}

learning::RunConfig run_config(const LearningBlock& b, std::uint64_t seed) {
  learning::RunConfig cfg;
  cfg.variant = b.variant;
  cfg.rho = b.rho;
  cfg.iterations = b.iterations;
  cfg.seed = Seed(seed);
  if (b.variant == learning::Variant::cq_ggadmm) cfg.quantizer = learning::QuantizerConfig{b.bits};
  if (b.variant == learning::Variant::c_ggadmm || b.variant == learning::Variant::cq_ggadmm) {
    cfg.censor = learning::CensorSchedule{b.xi0, b.alpha};
  }
  cfg.energy.bandwidth_hz = b.bandwidth_hz;
  cfg.energy.slot_s = b.slot_s;
  cfg.energy.noise_psd = b.noise_psd;
  return cfg;
}

}  // namespace iiote::scenario
