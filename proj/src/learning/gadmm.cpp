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

#include "iiote/learning/gadmm.hpp"

#include <algorithm>
#include <cmath>

#include "iiote/core/error.hpp"
#include "iiote/learning/kernels.hpp"

namespace iiote::learning {

std::string to_string(Variant v) {
  switch (v) {
    case Variant::ps_admm: return "ps-admm";
    case Variant::gadmm: return "gadmm";
    case Variant::d_gadmm: return "d-gadmm";
    case Variant::ggadmm: return "ggadmm";
    case Variant::c_ggadmm: return "c-ggadmm";
    case Variant::cq_ggadmm: return "cq-ggadmm";
  }
  return "?";
}

Variant parse_variant(const std::string& name) {
  for (auto v : {Variant::ps_admm, Variant::gadmm, Variant::d_gadmm, Variant::ggadmm,
                 Variant::c_ggadmm, Variant::cq_ggadmm}) {
    if (to_string(v) == name) return v;
  }
  throw InvalidArgument("unknown variant '" + name + "'");
}

std::optional<long> TrainingTrace::iterations_to(double target) const {
  if (rows.empty()) return std::nullopt;
  for (auto it = rows.rbegin(); it != rows.rend(); ++it) {
    if (!(it->objective_error < target)) {
      if (it == rows.rbegin()) return std::nullopt;
      return it->iteration + 1;
    }
  }
  return rows.front().iteration;
}

std::optional<double> TrainingTrace::joules_to(double target) const {
  const auto k = iterations_to(target);
  if (!k) return std::nullopt;
  return rows[static_cast<std::size_t>(*k - 1)].joules_cum;
}

namespace {

void check_config(const RunConfig& cfg, std::span<const LocalProblem> problems,
                  const Topology& topo) {
  const auto name = to_string(cfg.variant);
  if (problems.size() < 2) throw ConfigMismatch(name + ": need at least two workers");
  if (static_cast<int>(problems.size()) != topo.size()) {
    throw ConfigMismatch(name + ": topology size differs from the number of problems");
  }
  const int d = problems.front().dim();
  for (const auto& p : problems) {
    if (p.dim() != d) throw ConfigMismatch(name + ": workers disagree on model dimension");
  }
  if (!(cfg.rho > 0.0)) throw ConfigMismatch(name + ": rho must be > 0");
  if (cfg.iterations < 1) throw ConfigMismatch(name + ": iterations must be >= 1");
  if (cfg.energy.gains.size() != problems.size()) {
    throw ConfigMismatch(name + ": energy model needs one gain per worker");
  }
  cfg.energy.validate();

  const bool wants_quantizer = cfg.variant == Variant::cq_ggadmm;
  const bool wants_censor = cfg.variant == Variant::c_ggadmm || cfg.variant == Variant::cq_ggadmm;
  if (cfg.quantizer.has_value() != wants_quantizer) {
    throw ConfigMismatch(name + (wants_quantizer ? ": quantizer required" : ": quantizer not allowed"));
  }
  if (cfg.censor.has_value() != wants_censor) {
    throw ConfigMismatch(name + (wants_censor ? ": censor schedule required" : ": censor schedule not allowed"));
  }
  if (cfg.quantizer) cfg.quantizer->validate();
  if (cfg.censor) cfg.censor->validate();

  if (cfg.variant == Variant::gadmm || cfg.variant == Variant::d_gadmm) {
    if (topo.kind() != TopologyKind::chain) throw ConfigMismatch(name + ": requires a chain topology");
  }
  if (cfg.variant == Variant::d_gadmm && !topo.coherence()) {
    throw ConfigMismatch("d-gadmm: topology needs a coherence period");
  }
  if (cfg.variant != Variant::ps_admm) {
    if (!topo.connected()) throw ConfigMismatch(name + ": topology is not connected");
    if (!topo.role_bipartite()) throw ConfigMismatch(name + ": topology is not head/tail bipartite");
  }
}

double edge_residual(std::span<const Edge> edges, std::span<const RealVector> models) {
  double r = 0.0;
  for (const auto& e : edges) r += (models[e.left] - models[e.right]).norm();
  return r;
}

TrainingTrace run_parameter_server(const RunConfig& cfg, std::span<const LocalProblem> problems,
                                   double optimum) {
  const int n = static_cast<int>(problems.size());
  const int d = problems.front().dim();
  std::vector<RealVector> models(n, RealVector::Zero(d));
  std::vector<RealVector> duals(n, RealVector::Zero(d));
  RealVector server = RealVector::Zero(d);
  const Bits payload = full_precision_payload(d);

  TrainingTrace trace;
  trace.variant = cfg.variant;
  trace.optimum = optimum;
  TraceRow acc;
  for (long k = 1; k <= cfg.iterations; ++k) {
    auto update = [&](long i) {
      const RealVector anchor[] = {server};
      models[i] = primal_update(problems[i], anchor, duals[i], cfg.rho);
    };
    if (cfg.execution == Execution::parallel) {
#pragma omp parallel for schedule(static)
      for (long i = 0; i < n; ++i) update(i);
    } else {
      for (long i = 0; i < n; ++i) update(i);
    }
    // Every worker uploads a full-precision model; the band is split N ways.
    for (int i = 0; i < n; ++i) {
      acc.bits_cum += payload.value();
      acc.joules_cum += message_energy(payload, cfg.energy, cfg.energy.gains[i], n).value();
    }
    acc.scheduled_cum += n;

    RealVector sum = RealVector::Zero(d);
    for (int i = 0; i < n; ++i) sum += models[i] + duals[i] / cfg.rho;
    server = sum / n;
    double residual = 0.0;
    for (int i = 0; i < n; ++i) {
      duals[i] = dual_update(duals[i], models[i], server, cfg.rho);
      residual += (models[i] - server).norm();
    }

    acc.iteration = k;
    acc.objective = total_objective(problems, models);
    acc.objective_error = std::abs(acc.objective - optimum);
    acc.residual = residual;
    acc.max_phase_transmitters = n;
    trace.rows.push_back(acc);
  }
  trace.final_models = std::move(models);
  return trace;
}

class DecentralizedRun {
 public:
  DecentralizedRun(const RunConfig& cfg, std::span<const LocalProblem> problems,
                   const Topology& topology)
      : cfg_(cfg),
        problems_(problems),
        topo_(topology),
        n_(static_cast<int>(problems.size())),
        d_(problems.front().dim()),
        models_(n_, RealVector::Zero(d_)),
        visible_(n_, RealVector::Zero(d_)),
        duals_(topo_.edges().size(), RealVector::Zero(d_)) {
    rngs_.reserve(n_);
    for (int w = 0; w < n_; ++w) rngs_.push_back(Rng::for_stream(cfg.seed, 1000 + static_cast<std::uint64_t>(w)));
  }

  TrainingTrace execute(double optimum) {
    TrainingTrace trace;
    trace.variant = cfg_.variant;
    trace.optimum = optimum;
    const auto coherence = topo_.coherence();
    for (long k = 1; k <= cfg_.iterations; ++k) {
      if (cfg_.variant == Variant::d_gadmm && k > 1 && (k - 1) % *coherence == 0) {
        rechain_at(k - 1);
      }
      max_transmitters_ = 0;
      const double threshold = cfg_.censor ? cfg_.censor->threshold(k) : 0.0;
      const auto heads = topo_.heads();
      const auto tails = topo_.tails();
      phase(heads, threshold);
      phase(tails, threshold);
      if (cfg_.execution == Execution::parallel) {
        dual_all_parallel(topo_.edges(), visible_, cfg_.rho, duals_);
      } else {
        dual_all_serial(topo_.edges(), visible_, cfg_.rho, duals_);
      }

      acc_.iteration = k;
      acc_.objective = total_objective(problems_, models_);
      acc_.objective_error = std::abs(acc_.objective - optimum);
      acc_.residual = edge_residual(topo_.edges(), models_);
      acc_.max_phase_transmitters = max_transmitters_;
      trace.rows.push_back(acc_);
    }
    trace.final_models = models_;
    return trace;
  }

 private:
  // After re-chaining, duals are rebuilt by one pass along the new chain:
  // each worker receives its left dual, sets its right dual so that its own
  // stationarity condition grad f(theta) + lambda_right - lambda_left = 0
  // holds at its current model, and forwards it to its right neighbour.
  void rechain_at(long k) {
    topo_ = rechain(topo_, k, cfg_.seed);
    const auto& order = topo_.order();
    duals_.assign(topo_.edges().size(), RealVector::Zero(d_));
    RealVector left = RealVector::Zero(d_);
    for (std::size_t p = 0; p + 1 < order.size(); ++p) {
      const auto& prob = problems_[order[p]];
      const RealVector grad = 2.0 * (prob.gram() * models_[order[p]] - prob.moment());
      duals_[p] = left - grad;
      left = duals_[p];
    }
  }

  void phase(const std::vector<int>& group, double threshold) {
    const GroupUpdate in{group, problems_, &topo_, visible_, duals_, cfg_.rho};
    if (cfg_.execution == Execution::parallel) {
      primal_group_parallel(in, models_);
    } else {
      primal_group_serial(in, models_);
    }

    std::vector<std::pair<int, double>> sent;  // worker, payload bits
    for (int w : group) {
      ++acc_.scheduled_cum;
      switch (cfg_.variant) {
        case Variant::c_ggadmm:
          if (censor_decision(models_[w], visible_[w], threshold)) {
            visible_[w] = models_[w];
            sent.emplace_back(w, full_precision_payload(d_).value());
          } else {
            ++acc_.censored_cum;
          }
          break;
        case Variant::cq_ggadmm: {
          const auto msg = quantize(models_[w] - visible_[w], *cfg_.quantizer, rngs_[w]);
          RealVector candidate = visible_[w] + msg.dequantize();
          if (censor_decision(candidate, visible_[w], threshold)) {
            visible_[w] = std::move(candidate);
            sent.emplace_back(w, msg.payload().value());
          } else {
            ++acc_.censored_cum;
          }
          break;
        }
        default:
          visible_[w] = models_[w];
          sent.emplace_back(w, full_precision_payload(d_).value());
      }
    }
    const int share = static_cast<int>(sent.size());
    max_transmitters_ = std::max(max_transmitters_, share);
    for (const auto& [w, bits] : sent) {
      acc_.bits_cum += bits;
      acc_.joules_cum += message_energy(Bits(bits), cfg_.energy, cfg_.energy.gains[w], share).value();
    }
  }

  const RunConfig& cfg_;
  std::span<const LocalProblem> problems_;
  Topology topo_;
  int n_;
  int d_;
  std::vector<RealVector> models_;
  std::vector<RealVector> visible_;
  std::vector<RealVector> duals_;
  std::vector<Rng> rngs_;
  TraceRow acc_;
  int max_transmitters_ = 0;
};

}  // namespace

TrainingTrace run(const RunConfig& config, std::span<const LocalProblem> problems,
                  const Topology& topology) {
  check_config(config, problems, topology);
  const RealVector opt = centralized_solution(problems);
  std::vector<RealVector> at_opt(problems.size(), opt);
  const double optimum = total_objective(problems, at_opt);

  if (config.variant == Variant::ps_admm) return run_parameter_server(config, problems, optimum);
  return DecentralizedRun(config, problems, topology).execute(optimum);
}

}  // namespace iiote::learning
