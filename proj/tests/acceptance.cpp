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

// Acceptance suite. Prints one PASS/FAIL line per criterion followed by the
// measurements behind it; exits non-zero if any criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <numeric>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "iiote/core/error.hpp"
#include "iiote/learning/gadmm.hpp"
#include "iiote/nbiot/model.hpp"
#include "iiote/nbiot/monte_carlo.hpp"
#include "iiote/placement/generators.hpp"
#include "iiote/placement/solvers.hpp"
#include "iiote/scenario/runner.hpp"
#include "iiote/scenario/scenario.hpp"

using namespace iiote;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  bool pass = false;
  std::string summary;
  std::vector<std::string> details;
};

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

double quantile(std::vector<double> v, double q) {
  std::sort(v.begin(), v.end());
  const double pos = q * static_cast<double>(v.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const auto hi = std::min(lo + 1, v.size() - 1);
  return v[lo] + (pos - static_cast<double>(lo)) * (v[hi] - v[lo]);
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

// ---- learning --------------------------------------------------------------

constexpr int kWorkers = 18;
constexpr int kDim = 14;
constexpr int kSamples = 20;

learning::RunConfig learning_config(learning::Variant v, std::uint64_t seed, long iterations) {
  using learning::Variant;
  learning::RunConfig c;
  c.variant = v;
  c.iterations = iterations;
  c.seed = Seed(seed);
  c.energy = learning::CommEnergyModel::with_random_gains(kWorkers, Seed(seed));
  if (v == Variant::c_ggadmm || v == Variant::cq_ggadmm) c.censor = learning::CensorSchedule{};
  if (v == Variant::cq_ggadmm) c.quantizer = learning::QuantizerConfig{};
  return c;
}

Outcome learning_convergence() {
  const std::uint64_t seed = 1;
  const auto probs = learning::synthetic_linear_regression(kWorkers, kDim, kSamples, 0.1, Seed(seed));
  const auto topo = learning::build_topology(kWorkers, learning::TopologyKind::bipartite, Seed(seed));
  const auto trace = learning::run(learning_config(learning::Variant::ggadmm, seed, 3000), probs, topo);
  const auto k = trace.iterations_to(1e-4);
  Outcome o;
  o.pass = k.has_value() && *k <= 3000;
  o.summary = k ? fmt("ggadmm reached error < 1e-4 at iteration %ld of 3000", *k)
                : fmt("ggadmm did not reach 1e-4 in 3000 iterations (final error %.3g)", trace.rows.back().objective_error);
  return o;
}

Outcome energy_ordering() {
  using learning::Variant;
  Outcome o;
  int good = 0;
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const auto probs = learning::synthetic_linear_regression(kWorkers, kDim, kSamples, 0.1, Seed(seed));
    const auto topo = learning::build_topology(kWorkers, learning::TopologyKind::bipartite, Seed(seed));
    std::optional<double> j[4];
    const Variant vs[4] = {Variant::cq_ggadmm, Variant::c_ggadmm, Variant::ggadmm, Variant::ps_admm};
    for (int i = 0; i < 4; ++i) j[i] = learning::run(learning_config(vs[i], seed, 3000), probs, topo).joules_to(1e-3);
    const bool all = j[0] && j[1] && j[2] && j[3];
    const bool ok = all && *j[0] < *j[1] && *j[1] <= *j[2] && *j[2] < *j[3];
    good += ok;
    auto show = [](const std::optional<double>& x) { return x ? fmt("%.4g", *x) : std::string("n/a"); };
    o.details.push_back(fmt("seed %2d  J(cq)=%s  J(c)=%s  J(g)=%s  J(ps)=%s  %s", static_cast<int>(seed),
                            show(j[0]).c_str(), show(j[1]).c_str(), show(j[2]).c_str(), show(j[3]).c_str(),
                            ok ? "ordered" : "NOT ordered"));
  }
  o.pass = good >= 8;
  o.summary = fmt("ordering cq < c <= g < ps at error 1e-3 held on %d of 10 seeds (need >= 8)", good);
  return o;
}

Outcome dynamic_speedup() {
  Outcome o;
  double sum_d = 0.0, sum_s = 0.0;
  bool reached = true;
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const auto probs = learning::synthetic_linear_regression(kWorkers, kDim, kSamples, 0.1, Seed(seed));
    const auto chain = learning::build_topology(kWorkers, learning::TopologyKind::chain, Seed(seed));
    auto dyn = chain;
    dyn.set_coherence(20);
    const auto ks = learning::run(learning_config(learning::Variant::gadmm, seed, 3000), probs, chain).iterations_to(1e-3);
    const auto kd = learning::run(learning_config(learning::Variant::d_gadmm, seed, 3000), probs, dyn).iterations_to(1e-3);
    reached = reached && ks && kd;
    sum_s += ks ? static_cast<double>(*ks) : 3000.0;
    sum_d += kd ? static_cast<double>(*kd) : 3000.0;
    o.details.push_back(fmt("seed %2d  gadmm %s  d-gadmm %s", static_cast<int>(seed),
                            ks ? std::to_string(*ks).c_str() : "n/a", kd ? std::to_string(*kd).c_str() : "n/a"));
  }
  o.pass = reached && sum_d <= sum_s;
  o.summary = fmt("mean iterations to 1e-3: d-gadmm (coherence 20) %.1f, static gadmm %.1f", sum_d / 10, sum_s / 10);
  return o;
}

// ---- placement -------------------------------------------------------------

struct Drawn {
  placement::AppGraph app;
  placement::NetGraph net;
};

// Draws instances with sizes uniform in the given ranges, skipping draws that
// violate the capacity constraints. Returns the number skipped.
std::vector<Drawn> draw_instances(int count, int min_nodes, int max_nodes, int min_comp, int max_comp,
                                  std::uint64_t seed, int& skipped) {
  std::vector<Drawn> out;
  Rng sizes{Seed(seed)};
  skipped = 0;
  for (std::uint64_t s = seed; static_cast<int>(out.size()) < count; ++s) {
    const auto shape = sizes.bernoulli(0.5) ? placement::AppShape::wide : placement::AppShape::long_chain;
    const int lo = shape == placement::AppShape::wide ? std::max(min_comp, 3) : std::max(min_comp, 2);
    const int m = static_cast<int>(sizes.uniform_int(min_nodes, max_nodes));
    const int n = static_cast<int>(sizes.uniform_int(lo, max_comp));
    Drawn d{placement::generate_application(shape, n, Seed(s)), placement::generate_network(m, Seed(s))};
    try {
      placement::solve_heuristic(d.app, d.net);
    } catch (const Infeasible&) {
      ++skipped;
      continue;
    }
    out.push_back(std::move(d));
  }
  return out;
}

Outcome placement_optimality() {
  Outcome o;
  int skipped = 0;
  const auto instances = draw_instances(200, 2, 5, 2, 5, 4000, skipped);
  int agree = 0;
  double worst = 0.0;
  for (const auto& d : instances) {
    const double bf = placement::brute_force_optimal(d.app, d.net).assignment.total_energy;
    const double opt = placement::solve_optimal(d.app, d.net).assignment.total_energy;
    worst = std::max(worst, std::abs(bf - opt));
    agree += std::abs(bf - opt) <= 1e-9;
  }
  o.pass = agree == 200;
  o.summary = fmt("branch-and-bound matched brute force on %d of 200 instances (max |diff| %.3g)", agree, worst);
  o.details.push_back(fmt("%d capacity-infeasible draws skipped", skipped));
  return o;
}

Outcome heuristic_gap() {
  Outcome o;
  int skipped = 0;
  const auto instances = draw_instances(100, 5, 10, 3, 8, 7000, skipped);
  std::vector<double> ratios;
  int dominated = 0;
  for (const auto& d : instances) {
    const double opt = placement::solve_optimal(d.app, d.net).assignment.total_energy;
    const double heur = placement::solve_heuristic(d.app, d.net).assignment.total_energy;
    dominated += opt <= heur + 1e-12;
    ratios.push_back(opt / heur);
  }
  const double median = quantile(ratios, 0.5);
  o.pass = dominated == 100 && median >= 0.5 && median <= 1.0;
  o.summary = fmt("optimal <= heuristic on %d of 100; median optimal/heuristic %.4f", dominated, median);
  o.details.push_back(fmt("ratio distribution: min %.4f  q10 %.4f  q25 %.4f  median %.4f  q75 %.4f  q90 %.4f  max %.4f",
                          quantile(ratios, 0.0), quantile(ratios, 0.1), quantile(ratios, 0.25), median,
                          quantile(ratios, 0.75), quantile(ratios, 0.9), quantile(ratios, 1.0)));
  int bins[5] = {0, 0, 0, 0, 0};
  for (double r : ratios) bins[std::clamp(static_cast<int>(std::floor((r - 0.5) / 0.1)), 0, 4)]++;
  o.details.push_back(fmt("histogram: <0.6 %d  [0.6,0.7) %d  [0.7,0.8) %d  [0.8,0.9) %d  [0.9,1.0] %d",
                          bins[0], bins[1], bins[2], bins[3], bins[4]));
  o.details.push_back(fmt("%d capacity-infeasible draws skipped", skipped));
  return o;
}

Outcome runtime_scaling() {
  Outcome o;
  int skipped = 0;
  const auto instances = draw_instances(6, 15, 15, 12, 12, 9100, skipped);
  double heur_total = 0.0, exact_total = 0.0, heur_max = 0.0;
  bool any_budget = false;
  for (const auto& d : instances) {
    auto t0 = std::chrono::steady_clock::now();
    placement::solve_heuristic(d.app, d.net);
    const double th = seconds_since(t0);
    t0 = std::chrono::steady_clock::now();
    const auto r = placement::solve_optimal(d.app, d.net, std::chrono::duration<double>(120.0));
    const double te = seconds_since(t0);
    heur_total += th;
    exact_total += te;
    heur_max = std::max(heur_max, th);
    const bool budget = r.status == placement::SolveStatus::time_budget_exceeded;
    any_budget |= budget;
    o.details.push_back(fmt("%-4s heuristic %.3f ms, exact %.3f ms (%.1fx)%s",
                            placement::to_string(d.app.shape).c_str(), th * 1e3, te * 1e3, te / th,
                            budget ? fmt(", budget exceeded, gap %.4g", r.gap()).c_str() : ""));
  }
  o.pass = heur_max <= 1.0 && (exact_total >= 10.0 * heur_total || any_budget);
  o.summary = fmt("15 nodes / 12 components over %zu instances: heuristic max %.3f ms, exact/heuristic total time %.1fx",
                  instances.size(), heur_max * 1e3, exact_total / heur_total);
  return o;
}

// ---- radio and ledger --------------------------------------------------------

Outcome drift_accuracy() {
  Outcome o;
  double worst = 0.0;
  std::uint64_t seed = 1;
  for (double pd : {0.9, 1.0}) {
    for (double lam : {1.0, 5.0, 10.0}) {
      nbiot::RadioConfig c;
      c.K = 48;
      c.N_rmax = 10;
      c.p_d = pd;
      c.lambda_s = lam;
      c.lambda_b = 0.0;
      c.lambda_d = 0.0;
      c.R_u = 1e6;  // keep the uplink data queue stable at every load
      const double closed = nbiot::reservation_probability(c).p_rr;
      const double sim = nbiot::monte_carlo_reservation(c, 100000, Seed(seed++)).p_rr;
      worst = std::max(worst, std::abs(closed - sim));
      o.details.push_back(fmt("p_d %.1f  lambda_a %4.1f  closed %.4f  simulated %.4f  |diff| %.4f", pd, lam, closed, sim,
                              std::abs(closed - sim)));
    }
  }
  o.pass = worst <= 0.02;
  o.summary = fmt("max |P_rr(closed) - P_rr(simulated)| = %.4f over 6 points (limit 0.02)", worst);
  return o;
}

Outcome pow_race() {
  Outcome o;
  int inside = 0;
  std::uint64_t seed = 100;
  for (int m : {1, 5, 20}) {
    for (double lc : {0.5, 2.0}) {
      const auto e = nbiot::pow_latency_oracle_parallel(m, lc, 100000, Seed(seed++));
      const double closed = 1.0 / (lc * m);
      const double z = (e.mean - closed) / e.std_error;
      inside += std::abs(z) <= 3.0;
      o.details.push_back(fmt("M %2d  lambda_c %.1f  closed %.5f  simulated %.5f +- %.5f  z %+.2f", m, lc, closed, e.mean,
                              e.std_error, z));
    }
  }
  o.pass = inside == 6;
  o.summary = fmt("%d of 6 grid points within 3 sigma of 1/(lambda_c M)", inside);
  return o;
}

Outcome latency_shape() {
  Outcome o;
  std::vector<double> ts;
  for (int k = 0; k <= 12; ++k) ts.push_back(0.04 * std::pow(2.0, k / 2.0));
  const auto rows = nbiot::sweep(nbiot::ModelConfig{}, "radio.t", ts);
  std::size_t best = 0;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].breakdown.total_latency() < rows[best].breakdown.total_latency()) best = i;
    o.details.push_back(fmt("t %.4f s  L %.4f s  E %.4f J", rows[i].value, rows[i].breakdown.total_latency().value(),
                            rows[i].breakdown.total_energy().value()));
  }
  o.pass = best > 0 && best + 1 < rows.size();
  o.summary = fmt("E2E latency minimum %.4f s at t = %.4f s (sweep 0.04 .. 2.56 s, default config)",
                  rows[best].breakdown.total_latency().value(), rows[best].value);
  return o;
}

// ---- determinism -----------------------------------------------------------

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

Outcome determinism() {
  Outcome o;
  const fs::path dir(IIOTE_SCENARIO_DIR);
  const fs::path scratch = fs::temp_directory_path() / "iiote_acceptance";
  int files = 0, identical = 0;
  std::vector<fs::path> inputs;
  for (const auto& e : fs::directory_iterator(dir)) {
    if (e.path().extension() == ".yaml" && e.path().filename() != "instance_small.yaml") inputs.push_back(e.path());
  }
  std::sort(inputs.begin(), inputs.end());
  for (const auto& input : inputs) {
    auto s = scenario::parse_scenario(input.string());
    if (s.placement.instance) s.placement.instance = (dir / *s.placement.instance).string();
    std::vector<std::string> runs[2];
    for (int r = 0; r < 2; ++r) {
      const auto out = scratch / ("run" + std::to_string(r));
      fs::remove_all(out);
      s.base_dir = out.string();
      for (const auto& p : scenario::run_scenario(s)) runs[r].push_back(slurp(p));
    }
    const bool same = runs[0] == runs[1];
    files += static_cast<int>(runs[0].size());
    identical += same ? static_cast<int>(runs[0].size()) : 0;
    o.details.push_back(fmt("%-28s %zu file(s) %s", input.filename().string().c_str(), runs[0].size(),
                            same ? "identical" : "DIFFER"));
  }
  o.pass = files > 0 && identical == files;
  o.summary = fmt("%d of %d CSV files byte-identical across two runs of %zu scenarios", identical, files, inputs.size());
  return o;
}

}  // namespace

int main() {
  const std::pair<const char*, std::function<Outcome()>> criteria[] = {
      {"learning convergence", learning_convergence},
      {"energy ordering", energy_ordering},
      {"dynamic re-chaining speedup", dynamic_speedup},
      {"placement optimality", placement_optimality},
      {"heuristic dominance and gap", heuristic_gap},
      {"runtime scaling", runtime_scaling},
      {"drift approximation accuracy", drift_accuracy},
      {"proof-of-work race", pow_race},
      {"latency shape", latency_shape},
      {"determinism", determinism},
  };
  int failed = 0;
  int index = 0;
  for (const auto& [name, fn] : criteria) {
    ++index;
    Outcome o;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      o = fn();
    } catch (const std::exception& e) {
      o.pass = false;
      o.summary = std::string("exception: ") + e.what();
    }
    failed += !o.pass;
    std::printf("%s %2d %s: %s [%.1f s]\n", o.pass ? "PASS" : "FAIL", index, name, o.summary.c_str(), seconds_since(t0));
    for (const auto& d : o.details) std::printf("        %s\n", d.c_str());
    std::fflush(stdout);
  }
  std::printf("%d of %d criteria passed\n", index - failed, index);
  return failed == 0 ? 0 : 1;
}
