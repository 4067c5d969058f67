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

#include <cmath>
#include <sstream>

#include "iiote/core/error.hpp"
#include "iiote/nbiot/model.hpp"
#include "iiote/nbiot/monte_carlo.hpp"

using namespace iiote;
using namespace iiote::nbiot;

namespace {

// Random-access load only. The uplink rate is raised so that the data queue
// stays stable at every arrival rate used here.
RadioConfig access_only(double arrivals, double p_d = 1.0, int n_rmax = 10, int K = 48) {
  RadioConfig c;
  c.K = K;
  c.p_d = p_d;
  c.N_rmax = n_rmax;
  c.lambda_s = arrivals;
  c.lambda_b = 0.0;
  c.lambda_d = 0.0;
  c.R_u = 1e6;
  return c;
}

double sum_latency(const LatencyEnergyBreakdown& b) {
  double s = 0.0;
  for (const auto& [name, term] : b.terms()) s += term.latency;
  return s;
}

double sum_energy(const LatencyEnergyBreakdown& b) {
  double s = 0.0;
  for (const auto& [name, term] : b.terms()) s += term.energy;
  return s;
}

}  // namespace

TEST_SUITE("collision") {
  TEST_CASE("lone contender never collides") {
    CHECK(collision_probability(1.0, 48).value() == 0.0);
  }

  TEST_CASE("48 preambles, ten contenders") {
    CHECK(collision_probability(10.0, 48).value() == doctest::Approx(0.17261130040778594).epsilon(1e-14));
    CHECK(collision_probability_approx(10.0, 48).value() ==
          doctest::Approx(0.18806365384936508).epsilon(1e-14));
  }

  TEST_CASE("many preambles make collisions vanish") {
    CHECK(collision_probability(10.0, 1000000000).value() < 1e-7);
  }

  TEST_CASE("preconditions") {
    CHECK_THROWS_AS(collision_probability(0.5, 48), InvalidArgument);
    CHECK_THROWS_AS(collision_probability(2.0, 0), InvalidArgument);
  }
}

TEST_SUITE("reservation") {
  TEST_CASE("empty system") {
    const auto r = reservation_probability(access_only(0.0, 0.93));
    CHECK(r.lambda_tot == 0.0);
    CHECK(r.p_rr == doctest::Approx(0.93).epsilon(1e-15));
  }

  TEST_CASE("one attempt admits no retransmissions") {
    const auto r = reservation_probability(access_only(5.0, 0.9, 1));
    CHECK(r.lambda_tot == 5.0);
    CHECK(r.p_rr == doctest::Approx(0.9 * std::exp(-5.0 / 48)).epsilon(1e-14));
  }

  TEST_CASE("fixed point is self-consistent") {
    const auto cfg = access_only(7.0, 0.95);
    const auto r = reservation_probability(cfg);
    CHECK(r.p_rr == doctest::Approx(0.95 * std::exp(-r.lambda_tot / 48)).epsilon(1e-8));
    double total = 0.0;
    for (double l : r.per_attempt) total += l;
    CHECK(r.lambda_tot == doctest::Approx(total).epsilon(1e-8));
    CHECK(r.per_attempt.size() == 10);
  }

  TEST_CASE("drift approximation agrees with simulation") {
    const auto cfg = access_only(5.0, 1.0);
    const auto closed = reservation_probability(cfg);
    const auto sim = monte_carlo_reservation(cfg, 100000, Seed(1));
    CHECK(std::abs(closed.p_rr - sim.p_rr) <= 0.02);
  }

  TEST_CASE("success probability falls with load and rises with preambles") {
    double prev = 1.0;
    for (double lam : {0.5, 1.0, 2.0, 5.0, 10.0, 15.0}) {
      const double p = reservation_probability(access_only(lam)).p_rr;
      CHECK(p < prev);
      prev = p;
    }
    prev = 0.0;
    for (int K : {12, 24, 48, 64, 128}) {
      const double p = reservation_probability(access_only(5.0, 1.0, 10, K)).p_rr;
      CHECK(p > prev);
      prev = p;
    }
  }

  TEST_CASE("success probability rises with p_d, linearly at fixed load") {
    double prev = 0.0;
    for (double pd : {0.5, 0.7, 0.9, 1.0}) {
      const double p = reservation_probability(access_only(5.0, pd)).p_rr;
      CHECK(p > prev);
      prev = p;
    }
    // With one attempt the load does not depend on p_d.
    const double base = reservation_probability(access_only(5.0, 1.0, 1)).p_rr;
    for (double pd : {0.2, 0.5, 0.8}) {
      CHECK(reservation_probability(access_only(5.0, pd, 1)).p_rr == doctest::Approx(pd * base).epsilon(1e-14));
    }
  }

  TEST_CASE("retransmissions only add load") {
    for (double lam : {0.5, 3.0, 9.0}) {
      for (int n : {1, 2, 5, 10}) {
        const auto r = reservation_probability(access_only(lam, 0.9, n));
        CHECK(r.lambda_tot >= lam);
        if (n == 1) {
          CHECK(r.lambda_tot == lam);
        } else {
          CHECK(r.lambda_tot > lam);
        }
      }
    }
  }

  TEST_CASE("printed recursion drifts away from the simulation at high load") {
    const auto cfg = access_only(10.0, 0.9);
    const auto sim = monte_carlo_reservation(cfg, 100000, Seed(3));
    const auto consistent = reservation_probability(cfg, DriftForm::consistent);
    const auto printed = reservation_probability(cfg, DriftForm::as_printed);
    CHECK(std::abs(consistent.p_rr - sim.p_rr) < std::abs(printed.p_rr - sim.p_rr));
  }
}

TEST_SUITE("simulation") {
  TEST_CASE("light load succeeds at the link rate") {
    const auto sim = monte_carlo_reservation(access_only(0.01, 0.8), 200000, Seed(2));
    CHECK(sim.p_rr == doctest::Approx(0.8).epsilon(0.03));
  }

  TEST_CASE("one preamble: simultaneous contenders always collide") {
    const auto sim = monte_carlo_reservation(access_only(20.0, 1.0, 3, 1), 2000, Seed(2));
    CHECK(sim.p_rr < 1e-3);
    const auto lone = monte_carlo_reservation(access_only(0.001, 1.0, 3, 1), 20000, Seed(2));
    CHECK(lone.p_rr > 0.9);
  }

  TEST_CASE("same seed, same estimate") {
    const auto a = monte_carlo_reservation(access_only(5.0), 5000, Seed(9));
    const auto b = monte_carlo_reservation(access_only(5.0), 5000, Seed(9));
    CHECK(a.successes == b.successes);
    CHECK(a.attempts == b.attempts);
  }

  TEST_CASE("preconditions") {
    CHECK_THROWS_AS(monte_carlo_reservation(access_only(1.0), 999, Seed(1)), InvalidArgument);
    CHECK_THROWS_AS(monte_carlo_reservation(access_only(1.0), 1000, Seed(1), 0), InvalidArgument);
  }
}

TEST_SUITE("latency") {
  TEST_CASE("first-attempt success") {
    const RadioConfig c;
    CHECK(latency_rr(c, 1.0).value() == doctest::Approx(ra_latency(c) + rar_latency(c)).epsilon(1e-15));
  }

  TEST_CASE("single attempt") {
    RadioConfig c;
    c.N_rmax = 1;
    CHECK(latency_rr(c, 0.3).value() == doctest::Approx(0.3 * (ra_latency(c) + rar_latency(c))).epsilon(1e-15));
  }

  TEST_CASE("two attempts by hand") {
    RadioConfig c;
    c.N_rmax = 2;
    c.t = 1.0;
    c.tau = 0.0;
    c.replicas = 1;
    c.d = 1.0;
    c.Q = 0.0;
    c.u = 0.0;
    CHECK(ra_latency(c) + rar_latency(c) == 1.0);
    CHECK(latency_rr(c, 0.5).value() == doctest::Approx(1.0).epsilon(1e-15));
    CHECK_THROWS_AS(latency_rr(c, 0.0), InvalidArgument);
  }

  TEST_CASE("empty uplink queue is pure transmission time") {
    RadioConfig c = access_only(0.0);
    c.couple_w_to_nprach = false;
    CHECK(latency_tx(c).value() == doctest::Approx(c.l1 / (c.R_u * c.w)).epsilon(1e-15));
    c.couple_w_to_nprach = true;
    CHECK(latency_tx(c).value() == doctest::Approx(c.l1 / (c.R_u * c.w_eff())).epsilon(1e-15));
  }

  TEST_CASE("empty downlink queue") {
    const RadioConfig c = access_only(0.0);
    CHECK(latency_rx(c).value() == doctest::Approx(c.m2 / (c.R_d * c.y)).epsilon(1e-15));
  }

  TEST_CASE("queue latencies equal the uncancelled closed forms") {
    RadioConfig c;
    c.lambda_s = 2.0;
    c.lambda_d = 3.0;
    for (double t : {0.08, 0.32, 1.28}) {
      c.t = t;
      const double w = c.w_eff();
      const double s1 = c.f1 * c.l1 / (c.R_u * w);
      const double s2 = c.f1 * c.l2 / (c.R_u * c.R_u * w * w);
      const double lu = c.lambda_u();
      const double tx = c.f * lu * s1 * s2 / (2 * s1 * (1 - c.f * c.G * s1)) +
                        c.f * lu * s1 * s1 / (2 * (1 - c.f * lu * s1)) + c.l1 / (c.R_u * w);
      CHECK(latency_tx(c).value() == doctest::Approx(tx).epsilon(1e-12));

      const double h1 = c.f * c.m1 / (c.R_d * c.y);
      const double big_f = c.f * c.lambda_d * c.t;
      const double rx = 0.5 * big_f * h1 / c.t / (h1 * (1 - big_f * h1 / c.t)) +
                        big_f * h1 / (1 - big_f * h1 / c.t) + c.m2 / (c.R_d * c.y);
      CHECK(latency_rx(c).value() == doctest::Approx(rx).epsilon(1e-12));
    }
  }

  TEST_CASE("uplink latency grows with uplink load") {
    RadioConfig c;
    double prev = 0.0;
    for (double lam : {0.0, 0.5, 1.0, 2.0, 4.0, 6.0}) {
      c.lambda_s = lam;
      const double l = latency_tx(c).value();
      CHECK(l > prev);
      prev = l;
    }
  }

  TEST_CASE("unstable queues are rejected") {
    RadioConfig c;
    c.lambda_s = 100.0;
    CHECK_THROWS_AS(c.validate(), UnstableConfig);
    CHECK_THROWS_AS(latency_tx(c), UnstableConfig);
    c = RadioConfig{};
    c.lambda_d = 1000.0;
    CHECK_THROWS_AS(latency_rx(c), UnstableConfig);
    c = RadioConfig{};
    c.t = 0.01;  // shorter than the reserved NPRACH
    CHECK_THROWS_AS(c.validate(), UnstableConfig);
  }

  TEST_CASE("field validation names the field") {
    RadioConfig c;
    c.K = -1;
    try {
      c.validate();
      FAIL("expected DomainError");
    } catch (const DomainError& e) {
      CHECK(std::string(e.what()).find("radio.K") != std::string::npos);
    }
    PowerProfile p;
    p.P_e = 0.0;
    CHECK_THROWS_AS(p.validate(), DomainError);
    DltConfig d;
    d.M = 0;
    CHECK_THROWS_AS(d.validate(), DomainError);
  }
}

TEST_SUITE("ledger") {
  TEST_CASE("single miner") {
    DltConfig d;
    d.M = 1;
    d.lambda_0 = 5.0;
    d.P_c = 0.4;
    CHECK(d.lambda_c() == doctest::Approx(2.0));
    CHECK(pow_latency(d).value() == doctest::Approx(0.5).epsilon(1e-15));
  }

  TEST_CASE("doubling miners halves the race") {
    DltConfig d;
    const double one = pow_latency(d).value();
    d.M *= 2;
    CHECK(pow_latency(d).value() == doctest::Approx(one / 2).epsilon(1e-15));
  }

  TEST_CASE("race oracle, one miner") {
    const auto e = pow_latency_oracle_parallel(1, 1.0, 1000000, Seed(1));
    CHECK(std::abs(e.mean - 1.0) <= 0.01);
  }

  TEST_CASE("race oracle, five miners") {
    const auto e = pow_latency_oracle_parallel(5, 2.0, 100000, Seed(2));
    CHECK(std::abs(e.mean - 0.1) <= 0.005);
  }

  TEST_CASE("race oracle within three sigma across a grid") {
    std::uint64_t seed = 10;
    for (int m : {1, 3, 8}) {
      for (double lc : {0.25, 1.0, 4.0}) {
        const auto e = pow_latency_oracle_parallel(m, lc, 50000, Seed(seed++));
        CHECK_MESSAGE(std::abs(e.mean - 1.0 / (lc * m)) <= 3.0 * e.std_error, "M = " << m << ", lambda_c = " << lc);
      }
    }
  }

  TEST_CASE("race oracle: parallel equals serial") {
    const auto a = pow_latency_oracle_serial(7, 1.3, 30001, Seed(4));
    const auto b = pow_latency_oracle_parallel(7, 1.3, 30001, Seed(4));
    CHECK(a.mean == b.mean);
    CHECK(a.std_error == b.std_error);
    CHECK_THROWS_AS(pow_latency_oracle_serial(0, 1.0, 10, Seed(1)), InvalidArgument);
    CHECK_THROWS_AS(pow_latency_oracle_serial(1, 1.0, 0, Seed(1)), InvalidArgument);
  }
}

TEST_SUITE("breakdown") {
  TEST_CASE("sync energy") {
    ModelConfig c;
    c.power.P_l = 0.1;
    const auto b = evaluate(c);
    CHECK(b.sync_up.energy == doctest::Approx(0.033).epsilon(1e-14));
    CHECK(b.sync_up.latency == 0.33);
  }

  TEST_CASE("zero power, zero energy") {
    ModelConfig c;
    c.power = PowerProfile{1.0, 0, 0, 0, 0, 0, 0};
    c.dlt.P_c = 1.0;  // the race needs a positive rate
    const auto b = energy_breakdown(c, 0.8);
    for (const auto& [name, term] : b.terms()) {
      if (name == "pow") continue;  // priced with the miner power
      CHECK_MESSAGE(term.energy == 0.0, name);
    }
  }

  TEST_CASE("ledger energy with one miner") {
    ModelConfig c;
    c.dlt.M = 1;
    const auto b = evaluate(c);
    const double expected = c.dlt.P_c / c.dlt.lambda_c() + c.power.P_t * b.block_exchange.latency;
    CHECK(b.ledger_energy().value() == doctest::Approx(expected).epsilon(1e-14));
  }

  TEST_CASE("totals are the sum of the parts") {
    for (double t : {0.08, 0.32, 1.28}) {
      ModelConfig c;
      c.radio.t = t;
      const auto b = evaluate(c);
      CHECK(b.total_latency().value() == doctest::Approx(sum_latency(b)).epsilon(1e-15));
      CHECK(b.total_energy().value() == doctest::Approx(sum_energy(b)).epsilon(1e-15));
      CHECK(b.total_latency().value() ==
            doctest::Approx(b.radio_latency().value() + b.ledger_latency().value()).epsilon(1e-15));
      for (const auto& [name, term] : b.terms()) {
        CHECK(term.latency >= 0.0);
        CHECK(term.energy >= 0.0);
      }
    }
  }

  TEST_CASE("latency half carries no energy") {
    const auto b = e2e_latency(ModelConfig{});
    CHECK(b.total_energy().value() == 0.0);
    CHECK(b.total_latency().value() == doctest::Approx(evaluate(ModelConfig{}).total_latency().value()));
  }

  TEST_CASE("disabled ledger removes its terms") {
    ModelConfig c;
    c.dlt.enabled = false;
    const auto b = evaluate(c);
    CHECK(b.ledger_latency().value() == 0.0);
    CHECK(b.ledger_energy().value() == 0.0);
  }

  TEST_CASE("NPRACH period sweep has an interior latency minimum") {
    std::vector<double> ts;
    for (double t = 0.04; t <= 2.56 + 1e-12; t *= 2) ts.push_back(t);
    const auto rows = sweep(ModelConfig{}, "radio.t", ts);
    std::size_t best = 0;
    for (std::size_t i = 1; i < rows.size(); ++i) {
      if (rows[i].breakdown.total_latency() < rows[best].breakdown.total_latency()) best = i;
    }
    CHECK(best > 0);
    CHECK(best + 1 < rows.size());
  }

  TEST_CASE("parameter names") {
    ModelConfig c;
    set_parameter(c, "radio.t", 0.64);
    set_parameter(c, "dlt.M", 7);
    set_parameter(c, "power.P_l", 0.2);
    CHECK(c.radio.t == 0.64);
    CHECK(c.dlt.M == 7);
    CHECK(c.power.P_l == 0.2);
    CHECK(has_parameter("radio.K"));
    CHECK_FALSE(has_parameter("radio.k"));
    CHECK_THROWS_AS(set_parameter(c, "radio.bogus", 1.0), InvalidArgument);
    CHECK_THROWS_AS(set_parameter(c, "radio.K", 2.5), InvalidArgument);
  }

  TEST_CASE("sweep csv layout") {
    const auto rows = sweep(ModelConfig{}, "radio.t", {0.16, 0.32});
    std::ostringstream out;
    write_sweep_csv(out, "radio.t", rows);
    const auto text = out.str();
    CHECK(text.rfind("radio.t,L_total,E_total,L_sync_up,E_sync_up,L_rr_up,E_rr_up,", 0) == 0);
    CHECK(std::count(text.begin(), text.end(), '\n') == 3);
  }
}
