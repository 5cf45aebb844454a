// Copyright 2026 The Ridechain Authors.
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

// Acceptance gate: runs every criterion and prints one PASS/FAIL line each.
// Exit status is nonzero if any criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <deque>
#include <functional>
#include <iostream>
#include <limits>
#include <set>
#include <sstream>

#include "fmt/format.h"

#include "contract_harness.hpp"
#include "ridechain/cli.hpp"
#include "ridechain/crypto/schemes.hpp"
#include "ridechain/matching.hpp"
#include "scenario_fixtures.hpp"

namespace ridechain::testing {
namespace {

using crypto::G1;
using crypto::GT;
using crypto::PairingContext;
using Clock = std::chrono::steady_clock;

struct Verdict {
  bool pass = false;
  std::string detail;
};

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::vector<Scalar> random_set(std::size_t k, DeterministicRandom& rng) {
  std::vector<Scalar> out(k);
  for (auto& e : out) e = rng.nonzero_scalar();
  return out;
}

zksm::MembershipProof honest_proof(const zksm::ZkSetup& s, const Scalar& l,
                                   DeterministicRandom& rng) {
  const auto lc = zksm::commit_location(l, rng);
  return zksm::prove(s, l, lc.iota, lc.commitment, rng);
}

// 1. Completeness sweep.
Verdict completeness() {
  DeterministicRandom rng(101);
  const auto t0 = Clock::now();
  std::size_t total = 0, ok = 0;
  for (std::size_t k : {2u, 4u, 8u, 16u, 32u}) {
    const auto s = zksm::setup(random_set(k, rng), rng);
    for (const auto& l : s.set) {
      ++total;
      ok += zksm::verify(s.y, honest_proof(s, l, rng));
    }
  }
  const double secs = seconds_since(t0);
  return {ok == total && secs < 60.0,
          fmt::format("{}/{} proofs verified for k in {{2,4,8,16,32}} in {:.1f} s (limit 60 s)",
                      ok, total, secs)};
}

// 2. Soundness mutations: every single-field change must be rejected.
Verdict soundness() {
  const auto& ctx = PairingContext::get();
  DeterministicRandom rng(202);
  const auto s = zksm::setup(random_set(8, rng), rng);
  std::size_t tried = 0, rejected = 0;
  const std::vector<std::function<void(zksm::MembershipProof&, const Scalar&)>> mutations{
      [&](auto& p, const Scalar& d) { p.C = p.C + ctx.g() * d; },
      [&](auto& p, const Scalar& d) { p.V = p.V + ctx.g() * d; },
      [](auto& p, const Scalar& d) { p.c = p.c + d; },
      [&](auto& p, const Scalar& d) { p.a = p.a * ctx.gt().pow(d); },
      [&](auto& p, const Scalar& d) { p.Q = p.Q + ctx.h() * d; },
      [](auto& p, const Scalar& d) { p.z_l = p.z_l + d; },
      [](auto& p, const Scalar& d) { p.z_v = p.z_v + d; },
      [](auto& p, const Scalar& d) { p.z_i = p.z_i + d; },
  };
  for (std::size_t field = 0; field < mutations.size(); ++field) {
    for (int trial = 0; trial < 50; ++trial) {
      const Scalar& l = s.set[rng.below(s.k())];
      auto p = honest_proof(s, l, rng);
      mutations[field](p, rng.nonzero_scalar());
      ++tried;
      rejected += !zksm::verify(s.y, p);
    }
  }
  return {rejected == tried && tried == 400,
          fmt::format("{}/{} single-field mutations rejected (8 fields x 50)", rejected, tried)};
}

// 3. Direct group computation on transcripts whose randomness is replayed.
Verdict algebra() {
  const auto& ctx = PairingContext::get();
  DeterministicRandom rng(303);
  const auto s = zksm::setup(random_set(6, rng), rng);
  const GT e_gg2 = ctx.gt();
  std::size_t good = 0;
  for (int i = 0; i < 100; ++i) {
    const std::size_t idx = rng.below(s.k());
    const Scalar& l = s.set[idx];
    const Scalar iota = rng.scalar();
    const G1 C = crypto::pedersen_commit(l, iota);
    DeterministicRandom prover(1000 + i);
    DeterministicRandom replay(1000 + i);
    const auto p = zksm::prove(s, l, iota, C, prover);
    const Scalar v = replay.nonzero_scalar();
    const Scalar sr = replay.scalar();
    const Scalar t = replay.scalar();
    const Scalar m = replay.scalar();

    const bool eq9 = p.Q == C * p.c + ctx.h() * p.z_i + ctx.g() * p.z_l &&
                     p.Q == ctx.g() * sr + ctx.h() * m;
    const GT e_vy = crypto::pairing(p.V, s.y);
    const GT e_vg = crypto::pairing(p.V, ctx.g2());
    const bool eq10 = p.a == e_vy.pow(p.c) * e_vg.pow(-p.z_l) * e_gg2.pow(p.z_v) &&
                      p.a == e_vg.pow(-sr) * e_gg2.pow(t);
    const bool v_ok = p.V == s.signatures[idx] * v;
    good += eq9 && eq10 && v_ok;
  }
  return {good == 100, fmt::format("{}/100 honest transcripts satisfy both group equations", good)};
}

// 4. Catalog size before deduplication.
Verdict catalog_count() {
  trips::Grid grid({34.983, -90.310, 36.678, -81.647}, 3, 9);
  std::string failures;
  std::size_t six = 0;
  for (int n = 2; n <= 12; ++n) {
    trips::PlannedTrip route;
    for (int i = 0; i < n; ++i) {
      route.push_back({GeoPoint{35.5, -90.0 + 0.7 * i}, 600 * static_cast<Timestamp>(i)});
    }
    const auto cat = trips::enumerate_trips(trips::cloak_trip(grid, route, 900));
    std::size_t mult = 0;
    for (const auto& e : cat.entries) mult += static_cast<std::size_t>(e.multiplicity);
    const std::size_t want = static_cast<std::size_t>(n * (n - 1) / 2);
    if (cat.raw_size != want || mult != want) failures += fmt::format(" n={}", n);
    if (n == 6) six = cat.raw_size;
  }
  return {failures.empty() && six == 15,
          fmt::format("n(n-1)/2 triples for n in [2,12]; n=6 gives {}{}", six,
                      failures.empty() ? "" : "; wrong at" + failures)};
}

// 5. Matching against brute-force oracles.
bool catalog_oracle(const trips::CloakedTrip& ct, const trips::RideRequest& r) {
  for (std::size_t j = 0; j < ct.size(); ++j) {
    for (std::size_t k = j + 1; k < ct.size(); ++k) {
      const auto& w = ct[j].window;
      if (ct[j].cell.id == r.origin_cell && ct[k].cell.id == r.destination_cell &&
          std::max(w.start, r.origin_window.start) < std::min(w.end, r.origin_window.end)) {
        return true;
      }
    }
  }
  return false;
}

struct Ranked {
  double score;
  std::uint64_t bid;
  double walk;
  std::int64_t wait;
  double rep;
};

// True if `a` must be preferred over `b`.
bool strictly_better(const Ranked& a, const Ranked& b) {
  if (a.score != b.score) return a.score < b.score;
  if (a.bid != b.bid) return a.bid < b.bid;
  if (a.walk != b.walk) return a.walk < b.walk;
  if (a.wait != b.wait) return a.wait < b.wait;
  return a.rep > b.rep;
}

std::optional<std::size_t> selection_oracle(const std::vector<matching::RideOffer>& offers,
                                            const trips::DesiredTrip& d,
                                            const matching::MatchPreferences& p) {
  std::vector<std::size_t> feasible;
  std::uint64_t max_bid = 0;
  for (std::size_t i = 0; i < offers.size(); ++i) {
    const auto& o = offers[i];
    const bool near = haversine_m(o.pickup, d.pickup) <= p.delta_m &&
                      haversine_m(o.dropoff, d.dropoff) <= p.delta_m;
    const bool timely = std::abs(o.pickup_time - d.pickup_time) <= p.tau_s &&
                        std::abs(o.dropoff_time - d.dropoff_time) <= p.tau_s;
    if (near && timely) {
      feasible.push_back(i);
      max_bid = std::max(max_bid, o.bid);
    }
  }
  if (feasible.empty()) return std::nullopt;
  std::vector<Ranked> rank(offers.size());
  for (std::size_t i : feasible) {
    const auto& o = offers[i];
    const double walk = haversine_m(o.pickup, d.pickup);
    const std::int64_t wait = std::abs(o.pickup_time - d.pickup_time);
    double score = -p.w_rep * o.reputation;
    if (walk > 0) score += p.w_delta * walk / p.delta_m;
    if (wait > 0) score += p.w_tau * static_cast<double>(wait) / static_cast<double>(p.tau_s);
    if (o.bid > 0) score += p.w_bid * static_cast<double>(o.bid) / static_cast<double>(max_bid);
    rank[i] = {score, o.bid, walk, wait, o.reputation};
  }
  // The winner is the first offer that no other feasible offer beats.
  for (std::size_t i : feasible) {
    bool beaten = false;
    for (std::size_t j : feasible) beaten = beaten || (j != i && strictly_better(rank[j], rank[i]));
    if (!beaten) return i;
  }
  return std::nullopt;
}

Verdict matching_oracles() {
  DeterministicRandom rng(505);
  trips::Grid grid({34.983, -90.310, 36.678, -81.647}, 3, 9);
  std::size_t agree_catalog = 0, agree_select = 0, positives = 0;
  constexpr int kTrials = 10'000;
  for (int i = 0; i < kTrials; ++i) {
    trips::PlannedTrip route;
    const int n = 2 + static_cast<int>(rng.below(5));
    Timestamp t = static_cast<Timestamp>(rng.below(3600));
    for (int w = 0; w < n; ++w) {
      route.push_back({GeoPoint{35.0 + rng.uniform() * 1.6, -90.2 + rng.uniform() * 8.4}, t});
      t += 1 + static_cast<Timestamp>(rng.below(1800));
    }
    const auto ct = trips::cloak_trip(grid, route, 900);
    const auto cat = trips::enumerate_trips(ct);
    trips::RideRequest req;
    if (rng.below(2)) {
      // Aim at a real sub-trip so positives are common.
      const std::size_t j = rng.below(ct.size() - 1);
      const std::size_t k = j + 1 + rng.below(ct.size() - j - 1);
      req.origin_cell = ct[j].cell.id;
      req.destination_cell = ct[k].cell.id;
      const Timestamp s = ct[j].window.start + 450 * (static_cast<Timestamp>(rng.below(5)) - 2);
      req.origin_window = {s, s + 900};
    } else {
      req.origin_cell = static_cast<int>(rng.below(27));
      req.destination_cell = static_cast<int>(rng.below(27));
      const Timestamp s = 900 * static_cast<Timestamp>(rng.below(12));
      req.origin_window = {s, s + 900};
    }
    const bool want = catalog_oracle(ct, req);
    positives += want;
    agree_catalog += matching::request_in_catalog(cat, req) == want;

    trips::DesiredTrip d{{36.0, -86.0}, 10'000, {36.1, -86.2}, 12'000};
    matching::MatchPreferences p{100.0 + 100.0 * static_cast<double>(rng.below(8)),
                                 60 + 60 * static_cast<std::int64_t>(rng.below(10)),
                                 static_cast<double>(rng.below(3)),
                                 static_cast<double>(rng.below(3)),
                                 static_cast<double>(rng.below(3)),
                                 static_cast<double>(rng.below(3))};
    std::vector<matching::RideOffer> offers;
    const std::size_t m = rng.below(7);
    for (std::size_t o = 0; o < m; ++o) {
      matching::RideOffer off{fmt::format("d{}", o), d.pickup, d.pickup_time, d.dropoff,
                              d.dropoff_time, 0, 1.0};
      off.pickup = offset_point(d.pickup, 90.0 * static_cast<double>(rng.below(4)),
                                100.0 * static_cast<double>(rng.below(8)));
      off.dropoff = offset_point(d.dropoff, 45.0 * static_cast<double>(rng.below(8)),
                                 100.0 * static_cast<double>(rng.below(6)));
      off.pickup_time += 120 * (static_cast<std::int64_t>(rng.below(9)) - 4);
      off.dropoff_time += 120 * (static_cast<std::int64_t>(rng.below(9)) - 4);
      off.bid = 5 * rng.below(4);
      off.reputation = 0.25 * static_cast<double>(rng.below(5));
      offers.push_back(off);
    }
    agree_select += matching::select_offer(offers, d, p) == selection_oracle(offers, d, p);
  }
  return {agree_catalog == kTrials && agree_select == kTrials && positives > kTrials / 10,
          fmt::format("request_in_catalog {}/{}, select_offer {}/{} agree with oracles", agree_catalog,
                      kTrials, agree_select, kTrials)};
}

// 6. Exhaustive interleavings of deposit, claim and fine around the time
// boundaries of one deposit contract.
Verdict claim_or_fine() {
  Harness base(606);
  const Address tld = base.open_deposit();
  const json arrival = base.arrival_args();

  enum Action { kDeposit, kClaim, kFine, kToAccept, kToWindow, kToWindowEnd, kToExpiry };
  const std::vector<std::pair<Action, Timestamp>> actions{
      {kDeposit, 0},
      {kClaim, 0},
      {kFine, 0},
      {kToAccept, Harness::kAccept},
      {kToWindow, Harness::kWindowStart},
      {kToWindowEnd, Harness::kWindowEnd},
      {kToExpiry, Harness::kExpiration},
  };
  struct Node {
    ledger::Ledger ledger;
    int txs = 0;
    int claims = 0;
    int fines = 0;
  };
  const Address rider = base.rider.address;
  const Address driver = base.driver().address;
  const Amount rider0 = base.balance(rider);
  const Amount driver0 = base.balance(driver);
  const Amount supply = base.ledger.state().total_supply();

  std::deque<Node> queue{{base.ledger, 0, 0, 0}};
  std::set<std::string> seen;
  std::size_t explored = 0, violations = 0;
  std::set<std::string> terminal;
  DeterministicRandom rng(607);
  while (!queue.empty()) {
    Node node = std::move(queue.front());
    queue.pop_front();
    const auto& st = node.ledger.state();
    const auto* c = dynamic_cast<const TimeLockedDeposit*>(st.contract(tld));
    const std::string key = fmt::format("{}|{}|{}|{}|{}|{}", node.ledger.now(),
                                        contracts::deposit_status_name(c->status()), node.txs,
                                        node.claims, node.fines, st.balance(tld));
    if (!seen.insert(key).second) continue;
    ++explored;
    terminal.insert(std::string(contracts::deposit_status_name(c->status())));

    bool bad = node.claims > 0 && node.fines > 0;
    bad = bad || node.claims > 1 || node.fines > 1;
    bad = bad || st.total_supply() != supply;
    // Balances are measured after the rider's deposit went in.
    const auto rider_delta = static_cast<std::int64_t>(st.balance(rider) - rider0);
    const auto driver_delta = static_cast<std::int64_t>(st.balance(driver) - driver0);
    const auto rd = static_cast<std::int64_t>(Harness::kRiderDeposit);
    const auto dd = static_cast<std::int64_t>(Harness::kDriverDeposit);
    switch (c->status()) {
      case DepositStatus::kClaimed:
        bad = bad || st.balance(tld) != 0 || driver_delta != rd || rider_delta != 0;
        break;
      case DepositStatus::kFined:
        bad = bad || st.balance(tld) != 0 || rider_delta != rd + dd || driver_delta != -dd;
        break;
      case DepositStatus::kExpired:
        bad = bad || st.balance(tld) != 0 || rider_delta != rd || driver_delta != 0;
        break;
      default:
        break;
    }
    violations += bad;

    for (const auto& [action, when] : actions) {
      Node next = node;
      if (action >= kToAccept) {
        if (next.ledger.now() >= when) continue;
        next.ledger.advance_to(when);
        queue.push_back(std::move(next));
        continue;
      }
      if (node.txs >= 6) continue;
      Receipt r;
      if (action == kDeposit) {
        r = next.ledger.send(base.driver(), TxKind::kCall, tld, Harness::kDriverDeposit,
                             "driver_deposit", json::object(), rng);
      } else if (action == kClaim) {
        r = next.ledger.send(base.driver(), TxKind::kCall, tld, 0, "proof_of_arrival", arrival,
                             rng);
        next.claims += r.ok;
      } else {
        r = next.ledger.send(base.rider, TxKind::kCall, tld, 0, "fine_driver", json::object(), rng);
        next.fines += r.ok;
      }
      ++next.txs;
      queue.push_back(std::move(next));
    }
  }
  const bool reached_both = terminal.count("claimed") && terminal.count("fined");
  return {violations == 0 && reached_both,
          fmt::format("{} distinct states over <= 6 transactions, {} with both claim and fine; "
                      "claimed and fined both reachable: {}",
                      explored, violations, reached_both ? "yes" : "no")};
}

// 7 and 11. Randomized mixed-honesty scenarios.
Scenario random_scenario(DeterministicRandom& rng) {
  Scenario s = base_scenario();
  s.zksm_k = 4;
  s.economy.rider_deposit = 10 + rng.below(50);
  s.economy.driver_deposit = 10 + rng.below(50);
  s.economy.bond = 50 + rng.below(300);
  const int slots = 1 + static_cast<int>(rng.below(3));
  const int riders = 1 + static_cast<int>(rng.below(std::min(slots, 2)));
  std::vector<std::vector<int>> rider_slots(static_cast<std::size_t>(riders));
  for (int i = 0; i < slots; ++i) rider_slots[rng.below(rider_slots.size())].push_back(i);
  constexpr RiderBehavior kBehaviors[] = {
      RiderBehavior::kHonest,        RiderBehavior::kHonest,      RiderBehavior::kFakeReservation,
      RiderBehavior::kRiggedSetup,   RiderBehavior::kForgedDistance,
      RiderBehavior::kStopSigning};
  for (int r = 0; r < riders; ++r) {
    if (rider_slots[r].empty()) continue;
    auto spec = rider(fmt::format("r{}", r), rider_slots[r], kBehaviors[rng.below(6)]);
    spec.impostor_attempt = rng.below(4) == 0;
    s.riders.push_back(spec);
  }
  constexpr DriverProfile kProfiles[] = {
      DriverProfile::kHonest,          DriverProfile::kHonest,        DriverProfile::kNoShow,
      DriverProfile::kClaimAndAbandon, DriverProfile::kDistanceCheat, DriverProfile::kUncommitted};
  const int drivers = 1 + static_cast<int>(rng.below(3));
  for (int d = 0; d < drivers; ++d) {
    std::vector<int> mine;
    for (int i = 0; i < slots; ++i) {
      if (rng.below(3) != 0) mine.push_back(i);
    }
    if (mine.empty()) mine.push_back(static_cast<int>(rng.below(static_cast<std::uint64_t>(slots))));
    s.drivers.push_back(
        driver(fmt::format("d{}", d), mine, 5 + rng.below(10), kProfiles[rng.below(6)]));
  }
  return s;
}

struct RandomRuns {
  std::size_t runs = 0;
  std::size_t conserved = 0;
  std::size_t traces_ok = 0;
  std::size_t privacy_clean = 0;
  std::size_t trips = 0;
  std::set<std::string> outcomes;
  std::string first_problem;
};

RandomRuns random_runs() {
  RandomRuns out;
  DeterministicRandom rng(707);
  for (int i = 0; i < 200; ++i) {
    const Scenario s = random_scenario(rng);
    const auto result = agents::run_scenario(s, 7000 + static_cast<std::uint64_t>(i));
    ++out.runs;
    Amount genesis = 0;
    for (const auto& [_, v] : result.genesis) genesis += v;
    const bool conserved = genesis == result.final_state.total_supply();
    out.conserved += conserved;
    std::istringstream trace(cli::build_trace(result, 0));
    const auto check = cli::verify_trace(trace);
    out.traces_ok += check.ok;
    const auto leaks =
        agents::privacy_violations(result, result.final_state.to_json().dump(), s.precision);
    out.privacy_clean += leaks.empty();
    out.trips += result.trips.size();
    for (const auto& t : result.trips) out.outcomes.insert(std::string(agents::outcome_name(t.outcome)));
    if (out.first_problem.empty()) {
      if (!conserved) out.first_problem = fmt::format("scenario {} not conserved", i);
      if (!check.ok) out.first_problem = fmt::format("scenario {}: {}", i, check.message);
      if (!leaks.empty()) out.first_problem = fmt::format("scenario {}: {}", i, leaks.front());
    }
  }
  return out;
}

// 8. Splitting a distance into segments leaves the driver's income unchanged.
Verdict payment_linearity() {
  std::size_t cases = 0, equal = 0;
  for (std::uint64_t distance : {5u, 7u, 13u, 100u, 997u}) {
    for (Amount rate : {1u, 3u, 7u}) {
      std::vector<Amount> incomes;
      for (std::uint64_t parts : {1u, 2u, 5u}) {
        Harness h(800 + distance);
        const Amount before = h.balance(h.driver().address);
        const json args = {{"driver", h.driver().address.hex()},
                           {"driver_key", codec::hex(h.driver().key.pub)},
                           {"distance", distance},
                           {"rate", rate},
                           {"expiration", 5000}};
        Receipt dep = h.ledger.send(h.rider, TxKind::kDeploy, {}, distance * rate,
                                    std::string(contracts::kRidePayment), args, h.rng);
        if (!dep.ok) return {false, "payment deploy failed: " + dep.error};
        const Address pay = *dep.created;
        for (std::uint64_t i = 0; i < parts; ++i) {
          const std::uint64_t elapsed = distance * (i + 1) / parts - distance * i / parts;
          Receipt r = h.call(h.rider, pay, "proof_of_distance", h.segment_args(pay, i, elapsed));
          if (!r.ok) return {false, "segment rejected: " + r.error};
        }
        incomes.push_back(h.balance(h.driver().address) - before);
      }
      ++cases;
      equal += std::all_of(incomes.begin(), incomes.end(),
                           [&](Amount a) { return a == distance * rate; });
    }
  }
  return {equal == cases,
          fmt::format("{}/{} (distance, rate) cases pay distance x rate in 1, 2 and 5 segments",
                      equal, cases)};
}

// 9. Reputation classification.
Verdict reputation() {
  using contracts::Standing;
  const auto a = contracts::reputation_score(5, 5, 0.5);
  const auto b = contracts::reputation_score(10, 4, 0.5);
  const auto c = contracts::reputation_score(10, 8, 0.5);
  const bool ok = a.standing == Standing::kHonest && b.standing == Standing::kDishonest &&
                  c.standing == Standing::kSuspect;
  return {ok, fmt::format("(5,5) {}, (10,4) {}, (10,8) {} at T=0.5",
                          contracts::standing_name(a.standing), contracts::standing_name(b.standing),
                          contracts::standing_name(c.standing))};
}

// 10. Off-chain timing at k = 16; gated at four times the reference bounds.
Verdict timing() {
  cli::bench_zksm({16}, 2, 1);
  const auto row = cli::bench_zksm({16}, 10, 2).front();
  const double setup = row.setup.mean_ms, prove = row.prove.mean_ms, verify = row.verify.mean_ms;
  const bool within_1x = setup <= 500 && prove <= 900 && verify <= 2 * prove;
  const bool within_4x = setup <= 4 * 500 && prove <= 4 * 900 && verify <= 4 * 2 * prove;
  return {within_4x && row.all_verified,
          fmt::format("k=16 setup {:.1f} ms, prove {:.1f} ms, verify {:.1f} ms; reference bounds "
                      "(500, 900, 2x prove) {}; gate at 4x",
                      setup, prove, verify, within_1x ? "met" : "NOT met")};
}

Verdict privacy(const RandomRuns& runs) {
  std::size_t clean = runs.privacy_clean, total = runs.runs;
  for (const char* name : {"happy_path.json", "mixed.json"}) {
    const auto file = cli::load_scenario(std::string(RIDECHAIN_SCENARIO_DIR) + "/" + name);
    const auto result = agents::run_scenario(file.scenario, file.seed.value_or(0));
    ++total;
    clean += agents::privacy_violations(result, result.final_state.to_json().dump(),
                                        file.scenario.precision)
                 .empty();
  }
  return {clean == total,
          fmt::format("{}/{} scenarios with no exact coordinates in ledger state and no reused "
                      "request address{}",
                      clean, total, runs.first_problem.empty() ? "" : "; " + runs.first_problem)};
}

}  // namespace
}  // namespace ridechain::testing

int main() {
  using namespace ridechain::testing;
  int failed = 0;
  auto report = [&](int id, const char* title, const Verdict& v) {
    std::cout << fmt::format("[{}] AC{:<2} {}: {}\n", v.pass ? "PASS" : "FAIL", id, title, v.detail)
              << std::flush;
    failed += !v.pass;
  };
  auto guarded = [](const std::function<Verdict()>& f) {
    try {
      return f();
    } catch (const std::exception& e) {
      return Verdict{false, std::string("exception: ") + e.what()};
    }
  };

  report(1, "ZKSM completeness", guarded(completeness));
  report(2, "ZKSM soundness", guarded(soundness));
  report(3, "Algebraic oracle", guarded(algebra));
  report(4, "Catalog count", guarded(catalog_count));
  report(5, "Matching oracle equivalence", guarded(matching_oracles));
  report(6, "Claim-or-fine exclusivity", guarded(claim_or_fine));
  RandomRuns runs;
  report(7, "Conservation", guarded([&] {
           runs = random_runs();
           return Verdict{runs.conserved == runs.runs && runs.traces_ok == runs.runs,
                          fmt::format("{}/{} random scenarios ({} trips, {} outcome kinds) "
                                      "conserve supply; {} traces replay cleanly",
                                      runs.conserved, runs.runs, runs.trips, runs.outcomes.size(),
                                      runs.traces_ok)};
         }));
  report(8, "Payment linearity", guarded(payment_linearity));
  report(9, "Reputation classification", guarded(reputation));
  report(10, "Off-chain timing", guarded(timing));
  report(11, "Privacy surface", guarded([&] { return privacy(runs); }));
  std::cout << (failed ? fmt::format("{} criteria failed\n", failed) : "all criteria passed\n");
  return failed ? 1 : 0;
}
