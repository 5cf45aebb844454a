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

#include "ridechain/agents.hpp"

#include <algorithm>
#include <cctype>
#include <chrono>
#include <cmath>
#include <functional>
#include <queue>
#include <tuple>
#include <set>

#include "fmt/format.h"
#include "ridechain/codec.hpp"
#include "ridechain/log.hpp"

namespace ridechain::agents {
namespace {

constexpr std::string_view kChallengeTag = "ridechain/auth-challenge/v1";

using contracts::BRide;
using contracts::DepositStatus;
using contracts::RidePayment;
using contracts::TimeLockedDeposit;
using crypto::DeterministicRandom;
using ledger::Receipt;
using ledger::TxKind;
using ledger::Wallet;
using Clock = std::chrono::steady_clock;

template <class F>
auto timed(PhaseStats& stats, F&& f) {
  const auto start = Clock::now();
  auto result = f();
  stats.total_ms += std::chrono::duration<double, std::milli>(Clock::now() - start).count();
  ++stats.count;
  return result;
}

void scenario_check(bool cond, const std::string& msg) {
  if (!cond) throw Error(Errc::kScenarioError, msg);
}

bool in_box(const trips::BoundingBox& b, const GeoPoint& p) { return b.contains(p); }

json point_json(const GeoPoint& p) { return {{"lat", p.lat}, {"lon", p.lon}}; }

GeoPoint point_from(const json& j) { return {j.at("lat").get<double>(), j.at("lon").get<double>()}; }

}  // namespace

// ---------------------------------------------------------------------------
// Authentication

AuthSession::AuthSession(const G1& request_key, RandomSource& rng)
    : request_key_(request_key), nonce_(rng.nonzero_scalar()) {}

Bytes challenge_message(const Scalar& nonce) {
  Bytes m;
  append(m, kChallengeTag);
  append(m, crypto::encode(nonce));
  return m;
}

bool AuthSession::verify(const AttestationSignature& response) {
  RIDECHAIN_ENFORCE(!used_, Errc::kImpersonationDetected, "challenge nonce already consumed");
  used_ = true;
  RIDECHAIN_ENFORCE(crypto::verify(request_key_, challenge_message(nonce_), response),
                    Errc::kImpersonationDetected,
                    "challenge response does not verify under the request key");
  return true;
}

AttestationSignature answer_challenge(const KeyPair& key, const Scalar& nonce,
                                      RandomSource& rng) {
  return crypto::sign(key, challenge_message(nonce), rng);
}

bool mutual_authenticate(const G1& request_key, const KeyPair& responder, RandomSource& rng) {
  AuthSession session(request_key, rng);
  return session.verify(answer_challenge(responder, session.nonce(), rng));
}

// ---------------------------------------------------------------------------
// Names

std::string_view profile_name(DriverProfile p) {
  switch (p) {
    case DriverProfile::kHonest:
      return "honest";
    case DriverProfile::kNoShow:
      return "no_show";
    case DriverProfile::kClaimAndAbandon:
      return "claim_and_abandon";
    case DriverProfile::kDistanceCheat:
      return "distance_cheat";
    case DriverProfile::kUncommitted:
      return "uncommitted";
  }
  return "?";
}

std::string_view behavior_name(RiderBehavior b) {
  switch (b) {
    case RiderBehavior::kHonest:
      return "honest";
    case RiderBehavior::kFakeReservation:
      return "fake_reservation";
    case RiderBehavior::kRiggedSetup:
      return "rigged_setup";
    case RiderBehavior::kForgedDistance:
      return "forged_distance";
    case RiderBehavior::kStopSigning:
      return "stop_signing";
  }
  return "?";
}

std::optional<DriverProfile> parse_profile(std::string_view s) {
  for (auto p : {DriverProfile::kHonest, DriverProfile::kNoShow, DriverProfile::kClaimAndAbandon,
                 DriverProfile::kDistanceCheat, DriverProfile::kUncommitted}) {
    if (profile_name(p) == s) return p;
  }
  return std::nullopt;
}

std::optional<RiderBehavior> parse_behavior(std::string_view s) {
  for (auto b : {RiderBehavior::kHonest, RiderBehavior::kFakeReservation,
                 RiderBehavior::kRiggedSetup, RiderBehavior::kForgedDistance,
                 RiderBehavior::kStopSigning}) {
    if (behavior_name(b) == s) return b;
  }
  return std::nullopt;
}

std::string_view outcome_name(Outcome o) {
  switch (o) {
    case Outcome::kCompleted:
      return "completed";
    case Outcome::kNoOffers:
      return "no_offers";
    case Outcome::kNoFeasibleOffer:
      return "no_feasible_offer";
    case Outcome::kDriverNotCommitted:
      return "driver_not_committed";
    case Outcome::kSetupRejected:
      return "setup_rejected";
    case Outcome::kFinedRecovered:
      return "fined_recovered";
    case Outcome::kRiderNoShow:
      return "rider_no_show";
    case Outcome::kAbandoned:
      return "abandoned";
    case Outcome::kPartial:
      return "partial";
    case Outcome::kAborted:
      return "aborted";
  }
  return "?";
}

json TripRecord::to_json() const {
  auto opt_addr = [](const std::optional<Address>& a) { return a ? json(a->hex()) : json(); };
  return {{"rider", rider},
          {"trip", trip_index},
          {"request_address", request_address.hex()},
          {"request_id", request_id ? json(*request_id) : json()},
          {"driver", driver ? json(*driver) : json()},
          {"offers", offers},
          {"outcome", std::string(outcome_name(outcome))},
          {"detail", detail},
          {"deposit", opt_addr(deposit)},
          {"payment", opt_addr(payment)},
          {"distance_units", distance_units},
          {"prepaid_units", prepaid_units},
          {"segments_planned", segments_planned},
          {"segments_signed", segments_signed},
          {"paid_segments", paid_segments},
          {"impersonation_detected", impersonation_detected},
          {"abandonment_reported", abandonment_reported}};
}

// ---------------------------------------------------------------------------
// Validation

void validate(const Scenario& s) {
  const auto& b = s.box;
  scenario_check(b.south < b.north && b.west < b.east && b.south >= -90 && b.north <= 90 &&
                     b.west >= -180 && b.east <= 180,
                 "grid box must satisfy south < north, west < east within lat/lon range");
  scenario_check(s.rows >= 1 && s.cols >= 1, "grid rows and cols must be >= 1");
  scenario_check(s.interval_s > 0, "interval_s must be positive");
  scenario_check(s.precision >= 3 && s.precision <= 6, "precision must be in [3, 6]");
  scenario_check(s.zksm_k >= 2 && s.zksm_k <= 64, "zksm_k must be in [2, 64]");
  scenario_check(s.reputation_threshold >= 0 && s.reputation_threshold < 1,
                 "reputation_threshold must be in [0, 1)");
  scenario_check(s.economy.rider_deposit > 0 && s.economy.driver_deposit > 0,
                 "deposits must be positive");
  scenario_check(s.economy.driver_balance >= s.economy.bond, "driver balance below bond");
  const Timing& t = s.timing;
  scenario_check(t.offer_window > 0 && t.accept_window > 1 && t.fine_grace > 0 &&
                     t.segment_s > 0 && t.payment_grace > 0 && t.distance_unit_m > 0,
                 "timing values must be positive");
  scenario_check(t.request_lead > t.offer_window + t.accept_window + s.interval_s,
                 "request_lead must exceed offer_window + accept_window + interval_s");

  std::set<std::string> names;
  for (const RiderSpec& r : s.riders) {
    scenario_check(!r.name.empty() && names.insert(r.name).second,
                   "rider names must be unique and non-empty");
    scenario_check(!r.trips.empty(), "rider " + r.name + " has no trips");
    const auto& p = r.prefs;
    scenario_check(p.delta_m >= 0 && p.tau_s >= 0 && p.w_delta >= 0 && p.w_tau >= 0 &&
                       p.w_bid >= 0 && p.w_rep >= 0 &&
                       p.w_delta + p.w_tau + p.w_bid + p.w_rep > 0,
                   "rider " + r.name + " has invalid preferences");
    for (const RiderTrip& trip : r.trips) {
      const auto& d = trip.desired;
      scenario_check(in_box(b, d.pickup) && in_box(b, d.dropoff),
                     "rider " + r.name + " trip leaves the grid");
      scenario_check(d.pickup_time >= t.request_lead,
                     "rider " + r.name + " pickup_time earlier than request_lead");
      scenario_check(d.dropoff_time > d.pickup_time,
                     "rider " + r.name + " dropoff_time must follow pickup_time");
      scenario_check(!trip.max_offers || *trip.max_offers > 0,
                     "rider " + r.name + " max_offers must be positive");
    }
  }
  for (const DriverSpec& d : s.drivers) {
    scenario_check(!d.name.empty() && names.insert(d.name).second,
                   "agent names must be unique and non-empty");
    scenario_check(d.route.size() >= 2, "driver " + d.name + " route needs two waypoints");
    scenario_check(d.bid > 0, "driver " + d.name + " bid must be positive");
    for (std::size_t i = 0; i < d.route.size(); ++i) {
      scenario_check(in_box(b, d.route[i].point), "driver " + d.name + " route leaves the grid");
      scenario_check(i == 0 || d.route[i].time > d.route[i - 1].time,
                     "driver " + d.name + " waypoint times must strictly increase");
    }
  }
  std::set<std::string> lp_ids;
  for (const LocationProverSpec& lp : s.location_provers) {
    scenario_check(!lp.id.empty() && lp_ids.insert(lp.id).second,
                   "location prover ids must be unique and non-empty");
    const bool ok = lp.coverage.kind == Coverage::Kind::kCircle ? lp.coverage.radius_m > 0
                                                                : lp.coverage.polygon.size() >= 3;
    scenario_check(ok, "location prover " + lp.id + " has an empty coverage region");
  }
}

// ---------------------------------------------------------------------------
// Simulation

namespace {

struct DriverState {
  const DriverSpec* spec = nullptr;
  Wallet wallet;
  DeterministicRandom rng{0};
  crypto::Certificate cert;
  trips::CloakedTrip cloaked;
  trips::TripCatalog catalog;
  std::vector<trips::TimeWindow> commitments;
};

struct ChosenOffer {
  std::size_t driver = 0;
  matching::RideOffer offer;
};

struct TripState {
  const RiderSpec* rider = nullptr;
  const RiderTrip* spec = nullptr;
  std::size_t record = 0;
  Wallet wallet;
  DeterministicRandom rng{0};
  trips::RideRequest request;
  std::uint64_t request_id = 0;
  std::optional<ChosenOffer> chosen;
  Scalar meeting;
  bool setup_rejected = false;
  bool driver_busy = false;
  bool halted = false;
  std::uint64_t pay_units = 0;
  Timestamp payment_expiration = 0;
};

class Simulation {
 public:
  Simulation(const Scenario& s, std::uint64_t seed)
      : s_(s), grid_(s.box, s.rows, s.cols), master_(seed) {}

  SimulationResult run() {
    build_agents();
    for (std::size_t j = 0; j < drivers_.size(); ++j) {
      at(0, [this, j] { register_driver(j); });
    }
    for (std::size_t i = 0; i < trips_.size(); ++i) {
      const Timestamp t = trips_[i].spec->desired.pickup_time - s_.timing.request_lead;
      at(t, [this, i] { publish(i); });
    }
    while (!queue_.empty()) {
      Scheduled ev = queue_.top();
      queue_.pop();
      ledger_->advance_to(ev.time);
      ev.fn();
    }
    slash_dishonest();
    result_.final_state = ledger_->state();
    return std::move(result_);
  }

 private:
  struct Scheduled {
    Timestamp time;
    std::uint64_t seq;
    std::function<void()> fn;
    bool operator>(const Scheduled& o) const {
      return std::tie(time, seq) > std::tie(o.time, o.seq);
    }
  };

  void at(Timestamp t, std::function<void()> fn) {
    queue_.push({std::max(t, ledger_->now()), seq_++, std::move(fn)});
  }

  Receipt send(const Wallet& w, crypto::RandomSource& rng, const Address& target,
               const std::string& method, const json& args, Amount value = 0) {
    Receipt r = ledger_->send(w, TxKind::kCall, target, value, method, args, rng);
    ++result_.stats.transactions;
    if (!r.ok) {
      ++result_.stats.rejected_transactions;
      RIDECHAIN_LOG_DEBUG("t={} {} rejected: {}", ledger_->now(), method, r.error);
    }
    return r;
  }

  const BRide& registry() const { return *ledger_->view<BRide>(registry_); }
  TripRecord& record(std::size_t i) { return result_.trips[trips_[i].record]; }

  void build_agents() {
    DeterministicRandom keys = master_.fork("keys");
    admin_ = Wallet::from_key(KeyPair::generate(keys));
    for (const auto& spec : s_.location_provers) {
      lps_.push_back({spec.id, KeyPair::generate(keys), spec.coverage});
    }
    drivers_.reserve(s_.drivers.size());
    for (std::size_t j = 0; j < s_.drivers.size(); ++j) {
      DriverState d;
      d.spec = &s_.drivers[j];
      d.wallet = Wallet::from_key(KeyPair::generate(keys));
      d.rng = master_.fork("driver/" + std::to_string(j));
      d.cert = crypto::issue_certificate(admin_.key, d.spec->name, d.wallet.key.pub, keys);
      d.cloaked = trips::cloak_trip(grid_, d.spec->route, s_.interval_s);
      d.catalog = trips::enumerate_trips(d.cloaked);
      result_.genesis[d.wallet.address] = s_.economy.driver_balance;
      result_.drivers.push_back({d.spec->name, d.wallet.address, d.spec->profile});
      drivers_.push_back(std::move(d));
    }
    for (std::size_t r = 0; r < s_.riders.size(); ++r) {
      const RiderSpec& rider = s_.riders[r];
      for (std::size_t t = 0; t < rider.trips.size(); ++t) {
        TripState trip;
        trip.rider = &rider;
        trip.spec = &rider.trips[t];
        // A fresh key per request keeps requests unlinkable on the ledger.
        trip.wallet = Wallet::from_key(KeyPair::generate(keys));
        trip.rng = master_.fork("trip/" + std::to_string(r) + "/" + std::to_string(t));
        trip.record = result_.trips.size();
        TripRecord rec;
        rec.rider = rider.name;
        rec.trip_index = t;
        rec.request_address = trip.wallet.address;
        result_.trips.push_back(rec);
        result_.genesis[trip.wallet.address] = s_.economy.rider_balance;
        result_.rider_trips[rider.name].push_back(trip.spec->desired);
        trips_.push_back(std::move(trip));
      }
    }
    scenario_check(result_.genesis.size() == drivers_.size() + trips_.size(),
                   "address collision in genesis");

    ledger_ = std::make_unique<ledger::Ledger>(result_.genesis, contracts::default_registry());
    json lp_keys = json::object();
    for (const auto& lp : lps_) lp_keys[lp.identity] = codec::hex(lp.key.pub);
    registry_ = ledger_->genesis_deploy(contracts::kBRide,
                                        {{"bond", s_.economy.bond},
                                         {"threshold", s_.reputation_threshold},
                                         {"num_cells", grid_.size()},
                                         {"lp_keys", lp_keys}},
                                        admin_.address);
    result_.registry = registry_;
  }

  void register_driver(std::size_t j) {
    DriverState& d = drivers_[j];
    Receipt r = send(d.wallet, d.rng, registry_, "register_driver", json::object(),
                     s_.economy.bond);
    if (!r.ok) throw Error(Errc::kScenarioError, "driver registration failed: " + r.error);
  }

  // ---- rider: publish and select -------------------------------------------

  void publish(std::size_t i) {
    TripState& trip = trips_[i];
    const Timestamp deadline = ledger_->now() + s_.timing.offer_window;
    trip.request = trips::generalize_request(grid_, trip.spec->desired, s_.interval_s, deadline,
                                             trip.spec->max_offers);
    json args = {{"origin_cell", trip.request.origin_cell},
                 {"window_start", trip.request.origin_window.start},
                 {"window_end", trip.request.origin_window.end},
                 {"destination_cell", trip.request.destination_cell},
                 {"deadline", deadline}};
    if (trip.request.max_offers) args["max_offers"] = *trip.request.max_offers;
    Receipt r = send(trip.wallet, trip.rng, registry_, "make_ride_request", args);
    if (!r.ok) return finish(i, Outcome::kAborted, "request rejected: " + r.error);
    trip.request_id = r.result.get<std::uint64_t>();
    record(i).request_id = trip.request_id;
    for (std::size_t j = 0; j < drivers_.size(); ++j) {
      const Timestamp scan = std::min<Timestamp>(ledger_->now() + 10 * (j + 1), deadline);
      at(scan, [this, i, j] { driver_scan(j, i); });
    }
    at(deadline + 1, [this, i] { select(i); });
  }

  void driver_scan(std::size_t j, std::size_t i) {
    DriverState& d = drivers_[j];
    const TripState& trip = trips_[i];
    const contracts::Request& on_chain = registry().requests().at(trip.request_id);
    trips::RideRequest seen;
    seen.origin_cell = static_cast<int>(on_chain.origin_cell);
    seen.origin_window = {on_chain.window_start, on_chain.window_end};
    seen.destination_cell = static_cast<int>(on_chain.destination_cell);
    seen.deadline = on_chain.deadline;
    if (!matching::request_in_catalog(d.catalog, seen)) return;

    // First waypoint pair realizing the matched catalog entry.
    const auto& route = d.spec->route;
    std::optional<std::pair<std::size_t, std::size_t>> legs;
    for (std::size_t a = 0; a + 1 < route.size() && !legs; ++a) {
      for (std::size_t b = a + 1; b < route.size(); ++b) {
        if (d.cloaked[a].cell.id == seen.origin_cell &&
            d.cloaked[a].window.overlaps(seen.origin_window) &&
            d.cloaked[b].cell.id == seen.destination_cell) {
          legs.emplace(a, b);
          break;
        }
      }
    }
    if (!legs) return;
    const auto& pick = route[legs->first];
    const auto& drop = route[legs->second];
    json payload = {{"driver", d.wallet.address.hex()},
                    {"certificate",
                     {{"identity", d.cert.identity},
                      {"subject", codec::hex(d.cert.subject)},
                      {"sig", codec::hex(d.cert.sig)}}},
                    {"pickup", point_json(pick.point)},
                    {"pickup_time", pick.time},
                    {"dropoff", point_json(drop.point)},
                    {"dropoff_time", drop.time},
                    {"bid", d.spec->bid}};
    const Bytes ct = crypto::offer_encrypt(on_chain.requester_key, as_bytes(payload.dump()), d.rng);
    send(d.wallet, d.rng, registry_, "make_ride_offer",
         {{"request_id", trip.request_id}, {"ciphertext", to_hex(ct)}, {"bid", d.spec->bid}});
  }

  std::optional<std::size_t> driver_index(const Address& a) const {
    for (std::size_t j = 0; j < drivers_.size(); ++j) {
      if (drivers_[j].wallet.address == a) return j;
    }
    return std::nullopt;
  }

  // Decrypts and authenticates one on-ledger offer; nullopt if it fails any check.
  std::optional<ChosenOffer> open_offer(const TripState& trip, const contracts::Offer& o) const {
    try {
      const Bytes pt = crypto::offer_decrypt(trip.wallet.key, from_hex(o.ciphertext));
      const json p = json::parse(pt.begin(), pt.end());
      crypto::Certificate cert;
      cert.identity = p.at("certificate").at("identity").get<std::string>();
      auto subject = codec::g1_from_hex(p.at("certificate").at("subject").get<std::string>());
      auto sig = codec::signature_from_hex(p.at("certificate").at("sig").get<std::string>());
      if (!subject || !sig) return std::nullopt;
      cert.subject = *subject;
      cert.sig = *sig;
      if (!crypto::verify_certificate(admin_.key.pub, cert)) return std::nullopt;
      if (ledger::derive_address(cert.subject) != o.driver) return std::nullopt;
      if (p.at("bid").get<Amount>() != o.bid) return std::nullopt;
      auto j = driver_index(o.driver);
      if (!j) return std::nullopt;
      ChosenOffer c;
      c.driver = *j;
      c.offer.driver = o.driver.hex();
      c.offer.pickup = point_from(p.at("pickup"));
      c.offer.pickup_time = p.at("pickup_time").get<Timestamp>();
      c.offer.dropoff = point_from(p.at("dropoff"));
      c.offer.dropoff_time = p.at("dropoff_time").get<Timestamp>();
      c.offer.bid = o.bid;
      c.offer.reputation = registry().reputation(o.driver).beta;
      return c;
    } catch (const std::exception&) {
      return std::nullopt;
    }
  }

  // Meeting point plus k-1 distinct decoys drawn inside the rider's pickup cell.
  std::vector<Scalar> decoy_set(TripState& trip) {
    const trips::Cell cell = grid_.cell(trip.request.origin_cell);
    const auto [nw, se] = grid_.bounds(cell);
    const Scalar exact = trips::encode_location(trip.spec->desired.pickup, s_.precision);
    std::vector<Scalar> set{trip.meeting};
    std::set<std::array<std::uint8_t, 32>> seen{crypto::encode(trip.meeting),
                                                crypto::encode(exact)};
    int attempts = 0;
    while (set.size() < s_.zksm_k) {
      scenario_check(++attempts < 100'000, "pickup cell too small for the decoy set");
      GeoPoint p{se.lat + trip.rng.uniform() * (nw.lat - se.lat),
                 nw.lon + trip.rng.uniform() * (se.lon - nw.lon)};
      const Scalar e = trips::encode_location(p, s_.precision);
      if (seen.insert(crypto::encode(e)).second) set.push_back(e);
    }
    for (std::size_t k = set.size() - 1; k > 0; --k) {
      std::swap(set[k], set[trip.rng.below(k + 1)]);
    }
    return set;
  }

  void select(std::size_t i) {
    TripState& trip = trips_[i];
    const contracts::Request& on_chain = registry().requests().at(trip.request_id);
    record(i).offers = on_chain.offers.size();
    if (on_chain.offers.empty()) return finish(i, Outcome::kNoOffers, "");
    std::vector<ChosenOffer> opened;
    for (const auto& o : on_chain.offers) {
      if (auto c = open_offer(trip, o)) opened.push_back(*c);
    }
    std::vector<matching::RideOffer> offers;
    for (const auto& c : opened) offers.push_back(c.offer);
    auto pick = matching::select_offer(offers, trip.spec->desired, trip.rider->prefs);
    if (!pick) return finish(i, Outcome::kNoFeasibleOffer, "");
    trip.chosen = opened[*pick];
    DriverState& d = drivers_[trip.chosen->driver];
    record(i).driver = d.spec->name;

    trip.meeting = trips::encode_location(trip.chosen->offer.pickup, s_.precision);
    const std::vector<Scalar> elements = decoy_set(trip);
    zksm::ZkSetup setup = timed(result_.stats.setup, [&] { return zksm::setup(elements, trip.rng); });
    if (trip.rider->behavior == RiderBehavior::kRiggedSetup) {
      const auto pos = std::find(setup.set.begin(), setup.set.end(), trip.meeting) - setup.set.begin();
      setup.signatures[pos] = crypto::G1::generator() * trip.rng.nonzero_scalar();
    }
    json set = json::array();
    json sigs = json::array();
    for (const auto& e : setup.set) set.push_back(codec::hex(e));
    for (const auto& s : setup.signatures) sigs.push_back(codec::hex(s));
    const Timestamp accept = ledger_->now() + s_.timing.accept_window;
    const Timestamp expiration = trip.request.origin_window.end + s_.timing.fine_grace;
    Receipt r = send(trip.wallet, trip.rng, registry_, "open_deposit",
                     {{"request_id", trip.request_id},
                      {"driver", d.wallet.address.hex()},
                      {"driver_deposit", s_.economy.driver_deposit},
                      {"set", set},
                      {"signatures", sigs},
                      {"y", codec::hex(setup.y)},
                      {"accept_deadline", accept},
                      {"expiration", expiration}},
                     s_.economy.rider_deposit);
    if (!r.ok) return finish(i, Outcome::kAborted, "deposit rejected: " + r.error);
    const Address tld = Address::from_hex(r.result.get<std::string>());
    record(i).deposit = tld;
    const std::size_t j = trip.chosen->driver;
    at(ledger_->now() + std::min<Timestamp>(5, s_.timing.accept_window - 1),
       [this, i, j] { driver_accept(j, i); });
    at(expiration, [this, i] { rider_expiry(i); });
  }

  // ---- driver: audit, deposit, arrival -------------------------------------

  void driver_accept(std::size_t j, std::size_t i) {
    DriverState& d = drivers_[j];
    TripState& trip = trips_[i];
    if (d.spec->profile == DriverProfile::kUncommitted) return;
    const TimeLockedDeposit& tld = *ledger_->view<TimeLockedDeposit>(*record(i).deposit);
    const auto& setup = tld.terms().setup;
    const Scalar own = trips::encode_location(trip.chosen->offer.pickup, s_.precision);
    const bool ok = timed(result_.stats.audit, [&] { return zksm::audit(setup); }) &&
                    std::find(setup.set.begin(), setup.set.end(), own) != setup.set.end();
    if (!ok) {
      trip.setup_rejected = true;
      return;
    }
    const trips::TimeWindow window{tld.terms().pickup_start, tld.terms().pickup_end};
    for (const auto& w : d.commitments) {
      if (w.overlaps(window)) {
        trip.driver_busy = true;
        return;
      }
    }
    Receipt r = send(d.wallet, d.rng, *record(i).deposit, "driver_deposit", json::object(),
                     s_.economy.driver_deposit);
    if (!r.ok) return;
    d.commitments.push_back(window);
    if (d.spec->profile == DriverProfile::kNoShow) return;
    const Timestamp t = std::clamp(trip.chosen->offer.pickup_time, window.start, window.end - 1);
    at(t, [this, i, j] { driver_arrive(j, i); });
  }

  void driver_arrive(std::size_t j, std::size_t i) {
    DriverState& d = drivers_[j];
    TripState& trip = trips_[i];
    const GeoPoint position = trip.chosen->offer.pickup;
    const zksm::LocationProver* lp = nullptr;
    for (const auto& candidate : lps_) {
      if (candidate.coverage.contains(position)) {
        lp = &candidate;
        break;
      }
    }
    if (!lp) {
      record(i).detail = "no location prover covers the meeting point";
      return;
    }
    const TimeLockedDeposit& tld = *ledger_->view<TimeLockedDeposit>(*record(i).deposit);
    const zksm::ZkSetup setup = tld.terms().setup;
    const zksm::LocationCommitment lc = zksm::commit_location(trip.meeting, d.rng);
    const zksm::LPAttestation att = zksm::lp_attest(*lp, lc.request, position, d.rng);
    const zksm::MembershipProof proof = timed(result_.stats.prove, [&] {
      return zksm::prove(setup, trip.meeting, lc.iota, lc.commitment, d.rng);
    });
    ++result_.stats.proofs_generated;
    timed(result_.stats.verify, [&] { return zksm::verify(setup.y, proof); });
    Receipt r = send(d.wallet, d.rng, *record(i).deposit, "proof_of_arrival",
                     {{"lp", lp->identity},
                      {"commitment", codec::hex(att.commitment)},
                      {"attestation", codec::hex(att.sig)},
                      {"proof", to_hex(zksm::encode(proof))}});
    if (!r.ok) return;
    ++result_.stats.proofs_accepted;
    at(ledger_->now() + 1, [this, i, j] { authenticate(j, i); });
  }

  void authenticate(std::size_t j, std::size_t i) {
    DriverState& d = drivers_[j];
    TripState& trip = trips_[i];
    const G1 request_key = trip.wallet.key.pub;
    if (trip.rider->impostor_attempt) {
      const KeyPair impostor = KeyPair::generate(trip.rng);
      try {
        mutual_authenticate(request_key, impostor, d.rng);
      } catch (const Error& e) {
        if (e.code() != Errc::kImpersonationDetected) throw;
        record(i).impersonation_detected = true;
      }
    }
    if (trip.rider->behavior == RiderBehavior::kFakeReservation) {
      // Nobody answers the challenge; the driver leaves with the deposits.
      return finish(i, Outcome::kRiderNoShow, "rider absent at pickup");
    }
    mutual_authenticate(request_key, trip.wallet.key, d.rng);
    at(ledger_->now() + 1, [this, i] { open_payment(i); });
  }

  // ---- payment ---------------------------------------------------------------

  void open_payment(std::size_t i) {
    TripState& trip = trips_[i];
    const auto& offer = trip.chosen->offer;
    const double meters = haversine_m(offer.pickup, offer.dropoff);
    const auto units = std::max<std::uint64_t>(
        1, static_cast<std::uint64_t>(std::ceil(meters / s_.timing.distance_unit_m)));
    // The claimed rider deposit counts as a down payment on the fare.
    const std::uint64_t prepaid = std::min<std::uint64_t>(s_.economy.rider_deposit / offer.bid,
                                                          units - 1);
    trip.pay_units = units - prepaid;
    const Timestamp duration = std::max<Timestamp>(offer.dropoff_time - offer.pickup_time, 0);
    const auto by_time = std::max<std::uint64_t>(1, duration / s_.timing.segment_s);
    const std::uint64_t segments = std::min(trip.pay_units, by_time);
    TripRecord& rec = record(i);
    rec.distance_units = units;
    rec.prepaid_units = prepaid;
    rec.segments_planned = segments;
    trip.payment_expiration = ledger_->now() +
                              static_cast<Timestamp>(segments) * s_.timing.segment_s +
                              s_.timing.payment_grace;
    Receipt r = send(trip.wallet, trip.rng, registry_, "open_payment",
                     {{"deposit", rec.deposit->hex()},
                      {"distance", trip.pay_units},
                      {"rate", offer.bid},
                      {"expiration", trip.payment_expiration}},
                     trip.pay_units * offer.bid);
    if (!r.ok) return finish(i, Outcome::kAborted, "payment rejected: " + r.error);
    rec.payment = Address::from_hex(r.result.get<std::string>());
    at(ledger_->now() + s_.timing.segment_s, [this, i] { segment(i, 0); });
  }

  void halt(std::size_t i, std::string why) {
    TripState& trip = trips_[i];
    trip.halted = true;
    record(i).detail = std::move(why);
    at(trip.payment_expiration, [this, i] { rider_withdraw(i); });
  }

  void segment(std::size_t i, std::uint64_t index) {
    TripState& trip = trips_[i];
    TripRecord& rec = record(i);
    DriverState& d = drivers_[trip.chosen->driver];
    const std::uint64_t n = rec.segments_planned;
    const std::uint64_t actual =
        trip.pay_units * (index + 1) / n - trip.pay_units * index / n;

    if (d.spec->profile == DriverProfile::kClaimAndAbandon) {
      return halt(i, "driver abandoned the trip");
    }
    const RiderBehavior behavior = trip.rider->behavior;
    if (behavior == RiderBehavior::kStopSigning && index >= (n + 1) / 2) {
      return halt(i, "rider stopped signing");
    }
    std::uint64_t driver_claim = actual;
    if (d.spec->profile == DriverProfile::kDistanceCheat && index >= 1) ++driver_claim;
    std::uint64_t rider_claim = actual;
    if (behavior == RiderBehavior::kForgedDistance && index >= 1) --rider_claim;
    if (driver_claim != actual) return halt(i, "rider refused an inflated distance");
    if (rider_claim != actual) return halt(i, "driver refused an understated distance");

    const Bytes msg = contracts::segment_message(*rec.payment, index, actual);
    Receipt r = send(trip.wallet, trip.rng, *rec.payment, "proof_of_distance",
                     {{"index", index},
                      {"elapsed", actual},
                      {"rider_sig", codec::hex(crypto::sign(trip.wallet.key, msg, trip.rng))},
                      {"driver_sig", codec::hex(crypto::sign(d.wallet.key, msg, d.rng))}});
    if (!r.ok) return halt(i, "distance proof rejected: " + r.error);
    ++rec.segments_signed;
    rec.paid_segments += r.result.get<Amount>();
    if (index + 1 < n) {
      at(ledger_->now() + s_.timing.segment_s, [this, i, index] { segment(i, index + 1); });
      return;
    }
    const RidePayment& pay = *ledger_->view<RidePayment>(*rec.payment);
    if (pay.completed() && ledger_->state().balance(*rec.payment) == 0) {
      finish(i, Outcome::kCompleted, "");
    } else {
      finish(i, Outcome::kAborted, "payment not settled after the last segment");
    }
  }

  void rider_withdraw(std::size_t i) {
    TripState& trip = trips_[i];
    TripRecord& rec = record(i);
    if (ledger_->state().balance(*rec.payment) > 0) {
      send(trip.wallet, trip.rng, *rec.payment, "withdraw_funds", json::object());
    }
    if (rec.segments_signed == 0) {
      Receipt r = send(trip.wallet, trip.rng, registry_, "report_abandonment",
                       {{"deposit", rec.deposit->hex()}});
      rec.abandonment_reported = r.ok;
      return finish(i, Outcome::kAbandoned, rec.detail);
    }
    finish(i, Outcome::kPartial, rec.detail);
  }

  void rider_expiry(std::size_t i) {
    TripState& trip = trips_[i];
    TripRecord& rec = record(i);
    const TimeLockedDeposit& tld = *ledger_->view<TimeLockedDeposit>(*rec.deposit);
    const DepositStatus status = tld.status();
    if (status == DepositStatus::kClaimed) return;
    Receipt r = send(trip.wallet, trip.rng, *rec.deposit, "fine_driver", json::object());
    if (!r.ok) return finish(i, Outcome::kAborted, "fine rejected: " + r.error);
    if (status == DepositStatus::kArmed) {
      return finish(i, Outcome::kFinedRecovered, rec.detail);
    }
    if (trip.setup_rejected) return finish(i, Outcome::kSetupRejected, "driver audit failed");
    finish(i, Outcome::kDriverNotCommitted, trip.driver_busy ? "driver busy" : "");
  }

  void finish(std::size_t i, Outcome o, std::string detail) {
    TripRecord& rec = record(i);
    rec.outcome = o;
    if (!detail.empty()) rec.detail = std::move(detail);
    RIDECHAIN_LOG_INFO("t={} {}#{} -> {}", ledger_->now(), rec.rider, rec.trip_index,
                       outcome_name(o));
  }

  void slash_dishonest() {
    DeterministicRandom rng = master_.fork("slash");
    for (const auto& d : drivers_) {
      const auto* rec = registry().driver(d.wallet.address);
      if (!rec || rec->open_claims.empty()) continue;
      if (registry().reputation(d.wallet.address).standing != contracts::Standing::kDishonest) {
        continue;
      }
      send(admin_, rng, registry_, "slash_bond", {{"driver", d.wallet.address.hex()}});
    }
  }

  const Scenario& s_;
  trips::Grid grid_;
  DeterministicRandom master_;
  Wallet admin_;
  std::vector<zksm::LocationProver> lps_;
  std::vector<DriverState> drivers_;
  std::vector<TripState> trips_;
  std::unique_ptr<ledger::Ledger> ledger_;
  Address registry_;
  std::priority_queue<Scheduled, std::vector<Scheduled>, std::greater<>> queue_;
  std::uint64_t seq_ = 0;
  SimulationResult result_;
};

}  // namespace

SimulationResult run_scenario(const Scenario& scenario, std::uint64_t seed) {
  validate(scenario);
  return Simulation(scenario, seed).run();
}

std::vector<std::string> coordinate_forms(const GeoPoint& p, int precision) {
  std::vector<std::string> out;
  for (double v : {p.lat, p.lon}) {
    out.push_back(fmt::format("{:.5f}", v));
    out.push_back(fmt::format("{:.6f}", v));
    out.push_back(json(v).dump());
  }
  const auto [qlat, qlon] = trips::quantize(p, precision);
  out.push_back(std::to_string(qlat));
  out.push_back(std::to_string(qlon));
  out.push_back(to_hex(crypto::encode(trips::encode_location(p, precision))));
  return out;
}

namespace {

bool token_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '.'; }

bool contains_token(std::string_view text, std::string_view token) {
  for (auto pos = text.find(token); pos != std::string_view::npos;
       pos = text.find(token, pos + 1)) {
    const bool left = pos == 0 || !token_char(text[pos - 1]);
    const std::size_t end = pos + token.size();
    const bool right = end == text.size() || !token_char(text[end]);
    if (left && right) return true;
  }
  return false;
}

}  // namespace

std::vector<std::string> privacy_violations(const SimulationResult& result,
                                            std::string_view serialized, int precision) {
  std::vector<std::string> found;
  for (const auto& [rider, desired] : result.rider_trips) {
    for (std::size_t t = 0; t < desired.size(); ++t) {
      for (const GeoPoint& p : {desired[t].pickup, desired[t].dropoff}) {
        for (const std::string& form : coordinate_forms(p, precision)) {
          if (contains_token(serialized, form)) {
            found.push_back(rider + " trip " + std::to_string(t) + " coordinate " + form);
          }
        }
      }
    }
  }
  std::map<Address, std::string> owner;
  for (const TripRecord& rec : result.trips) {
    auto [it, fresh] = owner.emplace(rec.request_address, rec.rider);
    if (!fresh) found.push_back("request address reused: " + rec.request_address.hex());
  }
  return found;
}

}  // namespace ridechain::agents
