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

#include <cstdint>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "iiote/scenario/runner.hpp"
#include "iiote/scenario/scenario.hpp"

namespace {

constexpr int kExitValidation = 1;
constexpr int kExitRuntime = 2;

struct Command {
  iiote::scenario::Kind kind;
  CLI::App* app = nullptr;
  std::string scenario;
  std::optional<std::uint64_t> seed;
};

int execute(const Command& cmd) {
  using namespace iiote::scenario;
  Scenario s;
  try {
    s = parse_scenario(cmd.scenario);
    if (s.kind != cmd.kind) {
      std::cerr << "error: " << cmd.scenario << ": kind is '" << to_string(s.kind) << "', expected '"
                << to_string(cmd.kind) << "'\n";
      return kExitValidation;
    }
    if (cmd.seed) s.seed = *cmd.seed;
  } catch (const ValidationError& e) {
    for (const auto& p : e.problems()) std::cerr << "error: " << cmd.scenario << ": " << p << "\n";
    return kExitValidation;
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitValidation;
  }
  try {
    for (const auto& path : run_scenario(s)) std::cout << path << "\n";
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitRuntime;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  using iiote::scenario::Kind;
  CLI::App app{"Learning, placement and NB-IoT ledger experiments for IoT edge networks", "iiote"};
  app.require_subcommand(1);

  Command commands[] = {
      {Kind::learning, nullptr, {}, {}},
      {Kind::placement, nullptr, {}, {}},
      {Kind::radio, nullptr, {}, {}},
      {Kind::integrated, nullptr, {}, {}},
  };
  const char* names[] = {"learn", "place", "radio", "integrated"};
  const char* help[] = {
      "Run a decentralized learning scenario",
      "Compare optimal and heuristic component placement",
      "Evaluate the NB-IoT and ledger latency/energy model",
      "Run placement, learning and ledger pricing end to end",
  };
  for (int i = 0; i < 4; ++i) {
    auto& c = commands[i];
    c.app = app.add_subcommand(names[i], help[i]);
    c.app->add_option("--scenario", c.scenario, "Scenario file (YAML)")->required();
    c.app->add_option("--seed", c.seed, "Override the scenario seed");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitValidation;
  }
  for (const auto& c : commands) {
    if (c.app->parsed()) return execute(c);
  }
  return kExitValidation;
}
