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

#include "iiote/placement/serialization.hpp"

#include <fstream>
#include <ostream>
#include <set>
#include <sstream>

#include <yaml-cpp/yaml.h>

#include "iiote/core/csv.hpp"
#include "iiote/core/error.hpp"

namespace iiote::placement {

namespace {

[[noreturn]] void fail(const YAML::Node& node, const std::string& path, const std::string& what) {
  std::string where = path;
  if (node.IsDefined() && node.Mark().line >= 0) {
    where += " (line " + std::to_string(node.Mark().line + 1) + ")";
  }
  throw InvalidArgument(where + ": " + what);
}

void only_keys(const YAML::Node& node, const std::string& path, std::set<std::string> allowed) {
  if (!node.IsMap()) fail(node, path, "expected a mapping");
  for (const auto& kv : node) {
    const auto key = kv.first.as<std::string>();
    if (!allowed.count(key)) fail(kv.first, path + "." + key, "unknown key");
  }
}

template <typename T>
T get(const YAML::Node& parent, const std::string& key, const std::string& path) {
  const auto node = parent[key];
  if (!node) fail(parent, path + "." + key, "missing");
  try {
    return node.as<T>();
  } catch (const YAML::Exception&) {
    fail(node, path + "." + key, "wrong type");
  }
}

AppGraph read_app(const YAML::Node& root) {
  const std::string path = "application";
  only_keys(root, path, {"shape", "components", "edges"});
  AppGraph app;
  try {
    app.shape = parse_shape(get<std::string>(root, "shape", path));
  } catch (const InvalidShape& e) {
    fail(root["shape"], path + ".shape", e.what());
  }
  const auto comps = root["components"];
  if (!comps || !comps.IsSequence()) fail(root, path + ".components", "expected a list");
  for (std::size_t i = 0; i < comps.size(); ++i) {
    const auto c = comps[i];
    const auto cp = path + ".components[" + std::to_string(i) + "]";
    only_keys(c, cp, {"id", "name", "R_t", "O_t", "S_t"});
    AppComponent comp;
    comp.id = get<int>(c, "id", cp);
    comp.name = c["name"] ? get<std::string>(c, "name", cp) : "c" + std::to_string(comp.id);
    comp.resources = get<double>(c, "R_t", cp);
    comp.output = get<double>(c, "O_t", cp);
    comp.compute = get<double>(c, "S_t", cp);
    app.components.push_back(comp);
  }
  const auto edges = root["edges"];
  if (edges) {
    if (!edges.IsSequence()) fail(edges, path + ".edges", "expected a list");
    for (std::size_t i = 0; i < edges.size(); ++i) {
      const auto e = edges[i];
      const auto ep = path + ".edges[" + std::to_string(i) + "]";
      if (!e.IsSequence() || e.size() != 2) fail(e, ep, "expected [from, to]");
      app.edges.push_back({e[0].as<int>(), e[1].as<int>()});
    }
  }
  try {
    app.validate();
  } catch (const Error& e) {
    fail(root, path, e.what());
  }
  return app;
}

NetGraph read_net(const YAML::Node& root) {
  const std::string path = "network";
  only_keys(root, path, {"nodes", "links"});
  std::vector<NetNode> nodes;
  const auto ns = root["nodes"];
  if (!ns || !ns.IsSequence()) fail(root, path + ".nodes", "expected a list");
  for (std::size_t i = 0; i < ns.size(); ++i) {
    const auto n = ns[i];
    const auto np = path + ".nodes[" + std::to_string(i) + "]";
    only_keys(n, np, {"id", "kind", "P_n", "R_n", "C_n"});
    NetNode node;
    node.id = get<int>(n, "id", np);
    const auto kind = get<std::string>(n, "kind", np);
    if (kind == "wired") {
      node.kind = NodeKind::wired;
    } else if (kind == "wireless") {
      node.kind = NodeKind::wireless;
    } else {
      fail(n["kind"], np + ".kind", "expected wired or wireless");
    }
    node.speedup = get<double>(n, "P_n", np);
    node.resources = get<double>(n, "R_n", np);
    node.energy_per_unit = get<double>(n, "C_n", np);
    nodes.push_back(node);
  }
  std::vector<NetLink> links;
  const auto ls = root["links"];
  if (ls) {
    if (!ls.IsSequence()) fail(ls, path + ".links", "expected a list");
    for (std::size_t i = 0; i < ls.size(); ++i) {
      const auto l = ls[i];
      const auto lp = path + ".links[" + std::to_string(i) + "]";
      only_keys(l, lp, {"a", "b", "T_l"});
      links.push_back({get<int>(l, "a", lp), get<int>(l, "b", lp), get<double>(l, "T_l", lp)});
    }
  }
  try {
    return NetGraph(std::move(nodes), std::move(links));
  } catch (const Error& e) {
    fail(root, path, e.what());
  }
}

}  // namespace

Instance parse_instance(const std::string& text) {
  YAML::Node root;
  try {
    root = YAML::Load(text);
  } catch (const YAML::ParserException& e) {
    throw InvalidArgument("instance: line " + std::to_string(e.mark.line + 1) + ": " + e.msg);
  }
  only_keys(root, "instance", {"application", "network"});
  if (!root["application"]) fail(root, "application", "missing");
  if (!root["network"]) fail(root, "network", "missing");
  return Instance{read_app(root["application"]), read_net(root["network"])};
}

Instance read_instance(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidArgument("cannot open instance file " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_instance(ss.str());
}

void write_instance(std::ostream& out, const Instance& inst) {
  out << "application:\n";
  out << "  shape: " << to_string(inst.app.shape) << "\n";
  out << "  components:\n";
  for (const auto& c : inst.app.components) {
    out << "    - {id: " << c.id << ", name: " << c.name << ", R_t: " << format_double(c.resources)
        << ", O_t: " << format_double(c.output) << ", S_t: " << format_double(c.compute) << "}\n";
  }
  out << "  edges:\n";
  for (const auto& e : inst.app.edges) out << "    - [" << e.from << ", " << e.to << "]\n";
  out << "network:\n";
  out << "  nodes:\n";
  for (const auto& n : inst.net.nodes()) {
    out << "    - {id: " << n.id << ", kind: " << (n.kind == NodeKind::wired ? "wired" : "wireless")
        << ", P_n: " << format_double(n.speedup) << ", R_n: " << format_double(n.resources)
        << ", C_n: " << format_double(n.energy_per_unit) << "}\n";
  }
  out << "  links:\n";
  for (const auto& l : inst.net.links()) {
    out << "    - {a: " << l.a << ", b: " << l.b << ", T_l: " << format_double(l.energy) << "}\n";
  }
}

}  // namespace iiote::placement
