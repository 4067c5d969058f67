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

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "iiote/core/units.hpp"

namespace iiote::nbiot {

// NB-IoT cell parameters for one coverage class. Rates and packet-length
// moments are in consistent units (bits, bits/s, s). Arrival rates are per
// NPRACH period.
struct RadioConfig {
  int K = 48;            // preambles per random-access opportunity
  double tau = 0.0056;   // NPRACH unit length (s)
  int replicas = 4;      // c_j; the class reserves replicas * tau per period
  double t = 0.32;       // mean NPRACH inter-period (s)
  double d = 0.128;      // mean NPDCCH inter-period (s)
  int N_rmax = 10;       // maximum access attempts
  double lambda_s = 0.6;  // uplink arrivals, two traffic classes;
  double lambda_b = 0.4;  // lambda_u = lambda_s + lambda_b
  double lambda_d = 0.5;
  double p_d = 0.95;      // link delivery probability
  double Q = 2.0;         // mean requests waiting for an RAR
  double f = 1.0;
  double f1 = 1.0;
  double u = 0.008;
  double w = 1.0;         // NPUSCH resource share
  double y = 1.0;         // NPDSCH resource share
  double G = 1.0;
  double R_u = 20000.0;   // uplink rate (bit/s)
  double R_d = 25000.0;   // downlink rate (bit/s)
  double l1 = 2000.0;     // uplink packet-length moments
  double l2 = 4.0e6;
  double m1 = 100.0;      // downlink packet-length moments
  double m2 = 1.0e4;
  double L_sync = 0.33;
  // When set, the NPUSCH share shrinks by the NPRACH reservation:
  // w_eff = w * (1 - replicas * tau / t).
  bool couple_w_to_nprach = true;

  void validate() const;

  double lambda_u() const { return lambda_s + lambda_b; }
  double lambda_a() const { return lambda_u() + lambda_d; }
  double w_eff() const;
};

struct PowerProfile {
  double P_e = 0.5;    // power amplifier efficiency
  double P_I = 0.0025; // idle
  double P_c = 0.08;   // circuit
  double P_l = 0.1;    // listening
  double P_t = 0.2;    // transmit
  double E_s_u = 0.0;  // sleep energy, uplink
  double E_s_d = 0.0;  // sleep energy, downlink

  void validate() const;
};

// Proof-of-work ledger over M miners with exponential work times of rate
// lambda_c = lambda_0 * P_c.
struct DltConfig {
  bool enabled = true;
  int M = 5;
  double lambda_0 = 2.5;
  double P_c = 0.4;             // miner computation power (W)
  double hash_bits = 256.0;     // new-block announcement
  double request_bits = 128.0;  // block request
  double block_bits = 8000.0;   // block transfer

  void validate() const;
  double lambda_c() const { return lambda_0 * P_c; }
};

struct ModelConfig {
  RadioConfig radio;
  PowerProfile power;
  DltConfig dlt;

  void validate() const;
};

// Sets `name` ("radio.t", "power.P_l", "dlt.M", ...) to `value`. Throws
// InvalidArgument for unknown names.
void set_parameter(ModelConfig& cfg, const std::string& name, double value);
bool has_parameter(const std::string& name);

// 1 - (1 - 1/K)^(lambda_tot - 1).
Probability collision_probability(double lambda_tot, int K);
// 1 - exp(-lambda_tot / K).
Probability collision_probability_approx(double lambda_tot, int K);

enum class DriftForm {
  // lambda_tot = lambda_a + (1 - P_rr) * sum_{l=1}^{N-1} lambda(l), so that
  // at the fixed point lambda_tot = sum_l lambda(l).
  consistent,
  // lambda_tot = lambda_a + (1 - P_rr) * sum_{l=2}^{N} lambda(l).
  as_printed,
};

struct Reservation {
  double p_rr = 0.0;
  double lambda_tot = 0.0;
  std::vector<double> per_attempt;  // lambda(l), l = 1..N_rmax
};

// Drift-approximation fixed point with P_rr = p_d exp(-lambda_tot / K),
// starting from lambda(l) = 0 for l >= 2. Throws NonConvergence.
Reservation reservation_probability(const RadioConfig& cfg, DriftForm form = DriftForm::consistent);

// L_ra = 0.5 t + tau (tau scaled by the class replicas).
double ra_latency(const RadioConfig& cfg);
// L_rar = 0.5 d + 0.5 Q f u + u.
double rar_latency(const RadioConfig& cfg);

// sum_{l=1}^{N_rmax} (1 - P)^(l-1) P l (L_ra + L_rar).
Seconds latency_rr(const RadioConfig& cfg, double p_rr);

// NPUSCH latency of a packet with length moments (l1, l2). Throws
// UnstableConfig when a queue denominator is not positive.
Seconds latency_tx(const RadioConfig& cfg);
Seconds latency_tx(const RadioConfig& cfg, double l1, double l2);
// NPDSCH latency of a packet with length moments (m1, m2). The load factor
// uses h = h1.
Seconds latency_rx(const RadioConfig& cfg);
Seconds latency_rx(const RadioConfig& cfg, double m1, double m2);

// 1 / (lambda_c M).
Seconds pow_latency(const DltConfig& dlt);

struct Term {
  double latency = 0.0;  // s
  double energy = 0.0;   // J
};

struct LatencyEnergyBreakdown {
  Term sync_up, rr_up, tx_up, sleep_up;
  Term sync_down, rr_down, rx_down, sleep_down;
  Term pow, block_exchange;
  double p_rr = 0.0;
  double lambda_tot = 0.0;

  // Named parts in the fixed CSV order.
  std::vector<std::pair<std::string, Term>> terms() const;
  Seconds total_latency() const;
  Joules total_energy() const;
  Seconds radio_latency() const;   // L_UeD
  Joules radio_energy() const;     // E_UD
  Seconds ledger_latency() const;  // L_DLT
  Joules ledger_energy() const;    // E_DLT
};

// Latency half only: every term's energy is 0.
LatencyEnergyBreakdown e2e_latency(const ModelConfig& cfg);
// Both halves for a given P_rr.
LatencyEnergyBreakdown energy_breakdown(const ModelConfig& cfg, double p_rr);
// energy_breakdown at the drift-approximation P_rr.
LatencyEnergyBreakdown evaluate(const ModelConfig& cfg);

struct SweepRow {
  double value;
  LatencyEnergyBreakdown breakdown;
};

std::vector<SweepRow> sweep(const ModelConfig& base, const std::string& parameter,
                            const std::vector<double>& values);

// Columns: <parameter>, L_total, E_total, then L_<term> and E_<term> per term.
void write_sweep_csv(std::ostream& out, const std::string& parameter,
                     const std::vector<SweepRow>& rows);

}  // namespace iiote::nbiot
