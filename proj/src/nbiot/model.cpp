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

#include "iiote/nbiot/model.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <ostream>

#include "iiote/core/csv.hpp"
#include "iiote/core/error.hpp"
#include "iiote/core/fixed_point.hpp"

namespace iiote::nbiot {

namespace {

void require(bool ok, const std::string& field, const std::string& rule) {
  if (!ok) throw DomainError(field + ": must be " + rule);
}

bool nonneg(double v) { return std::isfinite(v) && v >= 0.0; }
bool positive(double v) { return std::isfinite(v) && v > 0.0; }

}  // namespace

void RadioConfig::validate() const {
  require(K >= 1, "radio.K", ">= 1");
  require(N_rmax >= 1, "radio.N_rmax", ">= 1");
  require(replicas >= 1, "radio.replicas", ">= 1");
  require(nonneg(tau), "radio.tau", ">= 0");
  require(positive(t), "radio.t", "> 0");
  require(nonneg(d), "radio.d", ">= 0");
  require(nonneg(lambda_s), "radio.lambda_s", ">= 0");
  require(nonneg(lambda_b), "radio.lambda_b", ">= 0");
  require(nonneg(lambda_d), "radio.lambda_d", ">= 0");
  require(p_d >= 0.0 && p_d <= 1.0, "radio.p_d", "in [0, 1]");
  for (auto [name, v] : {std::pair{"radio.Q", Q}, {"radio.f", f}, {"radio.f1", f1}, {"radio.u", u},
                         {"radio.G", G}, {"radio.l1", l1}, {"radio.l2", l2}, {"radio.m1", m1},
                         {"radio.m2", m2}, {"radio.L_sync", L_sync}}) {
    require(nonneg(v), name, ">= 0");
  }
  for (auto [name, v] : {std::pair{"radio.w", w}, {"radio.y", y}, {"radio.R_u", R_u},
                         {"radio.R_d", R_d}}) {
    require(positive(v), name, "> 0");
  }
  if (couple_w_to_nprach && !(replicas * tau < t)) {
    throw UnstableConfig("radio.t: NPRACH reservation replicas * tau must be shorter than t");
  }
  // Queue stability of NPUSCH and NPDSCH.
  const double s1 = f1 * l1 / (R_u * w_eff());
  if (!(f * lambda_u() * s1 < 1.0)) {
    throw UnstableConfig("radio.lambda_s/lambda_b: uplink load f * lambda_u * s1 must be < 1");
  }
  if (!(f * G * s1 < 1.0)) throw UnstableConfig("radio.G: f * G * s1 must be < 1");
  const double h1 = f * m1 / (R_d * y);
  const double big_f = f * lambda_d * t;
  if (!(big_f * h1 / t < 1.0)) {
    throw UnstableConfig("radio.lambda_d: downlink load F * h / t must be < 1");
  }
}

double RadioConfig::w_eff() const {
  return couple_w_to_nprach ? w * (1.0 - replicas * tau / t) : w;
}

void PowerProfile::validate() const {
  require(P_e > 0.0 && P_e <= 1.0, "power.P_e", "in (0, 1]");
  for (auto [name, v] : {std::pair{"power.P_I", P_I}, {"power.P_c", P_c}, {"power.P_l", P_l},
                         {"power.P_t", P_t}, {"power.E_s_u", E_s_u}, {"power.E_s_d", E_s_d}}) {
    require(nonneg(v), name, ">= 0");
  }
}

void DltConfig::validate() const {
  require(M >= 1, "dlt.M", ">= 1");
  require(positive(lambda_0), "dlt.lambda_0", "> 0");
  require(positive(P_c), "dlt.P_c", "> 0");
  for (auto [name, v] : {std::pair{"dlt.hash_bits", hash_bits}, {"dlt.request_bits", request_bits},
                         {"dlt.block_bits", block_bits}}) {
    require(nonneg(v), name, ">= 0");
  }
}

void ModelConfig::validate() const {
  radio.validate();
  power.validate();
  dlt.validate();
}

namespace {

using Setter = std::function<void(ModelConfig&, double)>;

int as_int(double v, const std::string& name) {
  if (v != std::floor(v)) throw InvalidArgument(name + ": expected an integer, got " + format_double(v));
  return static_cast<int>(v);
}

const std::map<std::string, Setter>& setters() {
  static const std::map<std::string, Setter> table = [] {
    std::map<std::string, Setter> m;
#define IIOTE_REAL(block, field) m["" #block "." #field] = [](ModelConfig& c, double v) { c.block.field = v; };
#define IIOTE_INT(block, field) \
  m["" #block "." #field] = [](ModelConfig& c, double v) { c.block.field = as_int(v, #block "." #field); };
    IIOTE_INT(radio, K)
    IIOTE_REAL(radio, tau)
    IIOTE_INT(radio, replicas)
    IIOTE_REAL(radio, t)
    IIOTE_REAL(radio, d)
    IIOTE_INT(radio, N_rmax)
    IIOTE_REAL(radio, lambda_s)
    IIOTE_REAL(radio, lambda_b)
    IIOTE_REAL(radio, lambda_d)
    IIOTE_REAL(radio, p_d)
    IIOTE_REAL(radio, Q)
    IIOTE_REAL(radio, f)
    IIOTE_REAL(radio, f1)
    IIOTE_REAL(radio, u)
    IIOTE_REAL(radio, w)
    IIOTE_REAL(radio, y)
    IIOTE_REAL(radio, G)
    IIOTE_REAL(radio, R_u)
    IIOTE_REAL(radio, R_d)
    IIOTE_REAL(radio, l1)
    IIOTE_REAL(radio, l2)
    IIOTE_REAL(radio, m1)
    IIOTE_REAL(radio, m2)
    IIOTE_REAL(radio, L_sync)
    IIOTE_REAL(power, P_e)
    IIOTE_REAL(power, P_I)
    IIOTE_REAL(power, P_c)
    IIOTE_REAL(power, P_l)
    IIOTE_REAL(power, P_t)
    IIOTE_REAL(power, E_s_u)
    IIOTE_REAL(power, E_s_d)
    IIOTE_INT(dlt, M)
    IIOTE_REAL(dlt, lambda_0)
    IIOTE_REAL(dlt, P_c)
    IIOTE_REAL(dlt, hash_bits)
    IIOTE_REAL(dlt, request_bits)
    IIOTE_REAL(dlt, block_bits)
#undef IIOTE_REAL
#undef IIOTE_INT
    return m;
  }();
  return table;
}

}  // namespace

bool has_parameter(const std::string& name) { return setters().count(name) > 0; }

void set_parameter(ModelConfig& cfg, const std::string& name, double value) {
  const auto it = setters().find(name);
  if (it == setters().end()) throw InvalidArgument("unknown parameter '" + name + "'");
  it->second(cfg, value);
}

Probability collision_probability(double lambda_tot, int K) {
  if (K < 1) throw InvalidArgument("collision_probability: K must be >= 1");
  if (!(lambda_tot >= 1.0)) throw InvalidArgument("collision_probability: lambda_tot must be >= 1");
  return Probability(1.0 - std::pow(1.0 - 1.0 / K, lambda_tot - 1.0));
}

Probability collision_probability_approx(double lambda_tot, int K) {
  if (K < 1) throw InvalidArgument("collision_probability_approx: K must be >= 1");
  if (!(lambda_tot >= 0.0)) throw InvalidArgument("collision_probability_approx: lambda_tot must be >= 0");
  return Probability(-std::expm1(-lambda_tot / K));
}

Reservation reservation_probability(const RadioConfig& cfg, DriftForm form) {
  cfg.validate();
  const int n = cfg.N_rmax;
  const double arrivals = cfg.lambda_a();
  auto success = [&](double lambda_tot) { return cfg.p_d * std::exp(-lambda_tot / cfg.K); };

  Reservation init;
  init.per_attempt.assign(static_cast<std::size_t>(n), 0.0);
  init.per_attempt[0] = arrivals;
  init.lambda_tot = arrivals;
  init.p_rr = success(arrivals);

  auto step = [&](const Reservation& cur) {
    Reservation next = cur;
    double backlog = 0.0;
    if (form == DriftForm::consistent) {
      for (int l = 0; l + 1 < n; ++l) backlog += cur.per_attempt[l];
    } else {
      for (int l = 1; l < n; ++l) backlog += cur.per_attempt[l];
    }
    next.lambda_tot = arrivals + (1.0 - cur.p_rr) * backlog;
    next.p_rr = success(next.lambda_tot);
    next.per_attempt[0] = arrivals;
    for (int l = 1; l < n; ++l) next.per_attempt[l] = (1.0 - next.p_rr) * next.per_attempt[l - 1];
    return next;
  };
  auto distance = [](const Reservation& a, const Reservation& b) {
    double dmax = std::max(std::abs(a.lambda_tot - b.lambda_tot), std::abs(a.p_rr - b.p_rr));
    for (std::size_t l = 0; l < a.per_attempt.size(); ++l) {
      dmax = std::max(dmax, std::abs(a.per_attempt[l] - b.per_attempt[l]));
    }
    return dmax;
  };
  return fixed_point(step, init, distance);
}

double ra_latency(const RadioConfig& cfg) { return 0.5 * cfg.t + cfg.replicas * cfg.tau; }

double rar_latency(const RadioConfig& cfg) {
  return 0.5 * cfg.d + 0.5 * cfg.Q * cfg.f * cfg.u + cfg.u;
}

Seconds latency_rr(const RadioConfig& cfg, double p_rr) {
  if (!(p_rr > 0.0 && p_rr <= 1.0)) throw InvalidArgument("latency_rr: P_rr must be in (0, 1]");
  const double per_attempt = ra_latency(cfg) + rar_latency(cfg);
  double total = 0.0;
  for (int l = 1; l <= cfg.N_rmax; ++l) {
    total += std::pow(1.0 - p_rr, l - 1) * p_rr * l * per_attempt;
  }
  return Seconds(total);
}

Seconds latency_tx(const RadioConfig& cfg) { return latency_tx(cfg, cfg.l1, cfg.l2); }

Seconds latency_tx(const RadioConfig& cfg, double l1, double l2) {
  const double w = cfg.w_eff();
  const double s1 = cfg.f1 * l1 / (cfg.R_u * w);
  const double s2 = cfg.f1 * l2 / (cfg.R_u * cfg.R_u * w * w);
  const double lam = cfg.lambda_u();
  const double batch_den = 1.0 - cfg.f * cfg.G * s1;
  const double load_den = 1.0 - cfg.f * lam * s1;
  if (!(batch_den > 0.0)) throw UnstableConfig("radio.G: 1 - f G s1 must be > 0");
  if (!(load_den > 0.0)) throw UnstableConfig("radio.lambda_s/lambda_b: 1 - f lambda_u s1 must be > 0");
  // f lambda s1 s2 / (2 s1 (1 - f G s1)) with s1 cancelled.
  const double batch = cfg.f * lam * s2 / (2.0 * batch_den);
  const double wait = cfg.f * lam * s1 * s1 / (2.0 * load_den);
  return Seconds(batch + wait + l1 / (cfg.R_u * w));
}

Seconds latency_rx(const RadioConfig& cfg) { return latency_rx(cfg, cfg.m1, cfg.m2); }

Seconds latency_rx(const RadioConfig& cfg, double m1, double m2) {
  const double rate = cfg.R_d * cfg.y;
  const double h1 = cfg.f * m1 / rate;
  const double big_f = cfg.f * cfg.lambda_d * cfg.t;
  const double den = 1.0 - big_f * h1 / cfg.t;
  if (!(den > 0.0)) throw UnstableConfig("radio.lambda_d: 1 - F h / t must be > 0");
  // 0.5 F h1 t^-1 / (h1 (1 - F h t^-1)) with h1 cancelled.
  const double first = 0.5 * big_f / cfg.t / den;
  const double second = big_f * h1 / den;
  return Seconds(first + second + m2 / rate);
}

Seconds pow_latency(const DltConfig& dlt) {
  dlt.validate();
  return Seconds(1.0 / (dlt.lambda_c() * dlt.M));
}

std::vector<std::pair<std::string, Term>> LatencyEnergyBreakdown::terms() const {
  return {{"sync_up", sync_up},     {"rr_up", rr_up},         {"tx_up", tx_up},
          {"sleep_up", sleep_up},   {"sync_down", sync_down}, {"rr_down", rr_down},
          {"rx_down", rx_down},     {"sleep_down", sleep_down}, {"pow", pow},
          {"block_exchange", block_exchange}};
}

Seconds LatencyEnergyBreakdown::radio_latency() const {
  return Seconds(sync_up.latency + rr_up.latency + tx_up.latency + sleep_up.latency +
                 sync_down.latency + rr_down.latency + rx_down.latency + sleep_down.latency);
}

Joules LatencyEnergyBreakdown::radio_energy() const {
  return Joules(sync_up.energy + rr_up.energy + tx_up.energy + sleep_up.energy +
                sync_down.energy + rr_down.energy + rx_down.energy + sleep_down.energy);
}

Seconds LatencyEnergyBreakdown::ledger_latency() const {
  return Seconds(pow.latency + block_exchange.latency);
}

Joules LatencyEnergyBreakdown::ledger_energy() const {
  return Joules(pow.energy + block_exchange.energy);
}

Seconds LatencyEnergyBreakdown::total_latency() const { return radio_latency() + ledger_latency(); }

Joules LatencyEnergyBreakdown::total_energy() const { return radio_energy() + ledger_energy(); }

namespace {

double block_exchange_latency(const ModelConfig& cfg) {
  const auto& r = cfg.radio;
  const auto& b = cfg.dlt;
  const double new_block = latency_tx(r, b.hash_bits, b.hash_bits * b.hash_bits).value();
  const double get_block = latency_rx(r, b.request_bits, b.request_bits * b.request_bits).value();
  const double trans_block = latency_tx(r, b.block_bits, b.block_bits * b.block_bits).value();
  return new_block + get_block + trans_block;
}

LatencyEnergyBreakdown latencies(const ModelConfig& cfg, double p_rr) {
  LatencyEnergyBreakdown out;
  out.p_rr = p_rr;
  const auto& r = cfg.radio;
  out.sync_up.latency = r.L_sync;
  out.sync_down.latency = r.L_sync;
  out.rr_up.latency = latency_rr(r, p_rr).value();
  out.rr_down.latency = out.rr_up.latency;
  out.tx_up.latency = latency_tx(r).value();
  out.rx_down.latency = latency_rx(r).value();
  if (cfg.dlt.enabled) {
    out.pow.latency = pow_latency(cfg.dlt).value();
    out.block_exchange.latency = block_exchange_latency(cfg);
  }
  return out;
}

}  // namespace

LatencyEnergyBreakdown e2e_latency(const ModelConfig& cfg) {
  cfg.validate();
  const auto res = reservation_probability(cfg.radio);
  auto out = latencies(cfg, res.p_rr);
  out.lambda_tot = res.lambda_tot;
  return out;
}

LatencyEnergyBreakdown energy_breakdown(const ModelConfig& cfg, double p_rr) {
  cfg.validate();
  auto out = latencies(cfg, p_rr);
  const auto& r = cfg.radio;
  const auto& p = cfg.power;
  const double active = p.P_c + p.P_e * p.P_t;
  const double tau = r.replicas * r.tau;

  out.sync_up.energy = p.P_l * r.L_sync;
  out.sync_down.energy = out.sync_up.energy;

  const double e_ra = (ra_latency(r) - tau) * p.P_I + tau * active;
  const double e_rar = p.P_l * rar_latency(r);
  double e_rr = 0.0;
  for (int l = 1; l <= r.N_rmax; ++l) e_rr += std::pow(1.0 - p_rr, l - 1) * p_rr * (e_ra + e_rar);
  out.rr_up.energy = e_rr;
  out.rr_down.energy = e_rr;

  const double tx_air = r.l1 / (r.R_u * r.w_eff());
  out.tx_up.energy = (out.tx_up.latency - tx_air) * p.P_I + active * tx_air;
  const double rx_air = r.m1 / (r.R_d * r.y);
  out.rx_down.energy = (out.rx_down.latency - rx_air) * p.P_I + p.P_l * rx_air;
  out.sleep_up.energy = p.E_s_u;
  out.sleep_down.energy = p.E_s_d;

  if (cfg.dlt.enabled) {
    out.pow.energy = cfg.dlt.P_c * out.pow.latency;
    out.block_exchange.energy = p.P_t * out.block_exchange.latency;
  }
  for (const auto& [name, term] : out.terms()) {
    if (term.energy < 0.0) throw DomainError("energy term " + name + " is negative");
  }
  return out;
}

LatencyEnergyBreakdown evaluate(const ModelConfig& cfg) {
  cfg.validate();
  const auto res = reservation_probability(cfg.radio);
  auto out = energy_breakdown(cfg, res.p_rr);
  out.lambda_tot = res.lambda_tot;
  return out;
}

std::vector<SweepRow> sweep(const ModelConfig& base, const std::string& parameter,
                            const std::vector<double>& values) {
  std::vector<SweepRow> rows;
  rows.reserve(values.size());
  for (double v : values) {
    ModelConfig cfg = base;
    set_parameter(cfg, parameter, v);
    rows.push_back({v, evaluate(cfg)});
  }
  return rows;
}

void write_sweep_csv(std::ostream& out, const std::string& parameter,
                     const std::vector<SweepRow>& rows) {
  CsvWriter csv(out);
  std::vector<std::string> header{parameter, "L_total", "E_total"};
  for (const auto& [name, term] : LatencyEnergyBreakdown{}.terms()) {
    header.push_back("L_" + name);
    header.push_back("E_" + name);
  }
  csv.header(header);
  for (const auto& row : rows) {
    csv.field(row.value)
        .field(row.breakdown.total_latency().value())
        .field(row.breakdown.total_energy().value());
    for (const auto& [name, term] : row.breakdown.terms()) csv.field(term.latency).field(term.energy);
    csv.end_row();
  }
}

}  // namespace iiote::nbiot
