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

#include "iiote/placement/generators.hpp"

#include <cmath>

#include "iiote/core/error.hpp"

namespace iiote::placement {

NetGraph generate_network(int nodes, Seed seed) {
  if (nodes < 2) throw InvalidArgument("generate_network: need M >= 2 nodes");
  Rng rng = Rng::for_stream(seed, 0x6e6574ULL);  // "net"
  const int wired = static_cast<int>(std::lround(0.6 * nodes));

  std::vector<NetNode> ns(nodes);
  for (int i = 0; i < nodes; ++i) {
    auto& n = ns[i];
    n.id = i;
    n.kind = i < wired ? NodeKind::wired : NodeKind::wireless;
    n.resources = static_cast<double>(rng.uniform_int(1, 8));
    n.speedup = rng.uniform(1.0, 3.0);
    n.energy_per_unit = rng.uniform(0.5, 1.5);
  }

  for (;;) {
    std::vector<NetLink> links;
    for (int a = 0; a < nodes; ++a) {
      for (int b = a + 1; b < nodes; ++b) {
        const bool wa = ns[a].kind == NodeKind::wired;
        const bool wb = ns[b].kind == NodeKind::wired;
        const double p = (wa && wb) ? 0.8 : (!wa && !wb) ? 0.5 : 0.4;
        if (rng.bernoulli(p)) links.push_back({a, b, (wa && wb) ? 0.2 : 0.8});
      }
    }
    NetGraph g(ns, std::move(links));
    if (g.connected()) return g;
  }
}

AppGraph generate_application(AppShape shape, int components, Seed seed) {
  AppGraph app;
  app.shape = shape;
  switch (shape) {
    case AppShape::long_chain:
      if (components < 2) throw InvalidShape("long application needs at least 2 components");
      break;
    case AppShape::wide:
      if (components < 3) throw InvalidShape("wide application needs at least 3 components");
      break;
    case AppShape::custom:
      throw InvalidShape("generate_application: only wide and long shapes are generated");
  }
  Rng rng = Rng::for_stream(seed, 0x617070ULL);  // "app"
  app.components.resize(components);
  for (int i = 0; i < components; ++i) {
    auto& c = app.components[i];
    c.id = i;
    c.name = "c" + std::to_string(i);
    c.resources = static_cast<double>(rng.uniform_int(1, 8));
    c.output = rng.uniform(0.5, 1.5);
    c.compute = static_cast<double>(rng.uniform_int(1, 2));
  }
  if (shape == AppShape::long_chain) {
    for (int i = 0; i + 1 < components; ++i) app.edges.push_back({i, i + 1});
  } else {
    const int end = components - 1;
    for (int i = 1; i < end; ++i) app.edges.push_back({0, i});
    for (int i = 1; i < end; ++i) app.edges.push_back({i, end});
  }
  return app;
}

}  // namespace iiote::placement
