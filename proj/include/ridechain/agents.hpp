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

#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ridechain/contracts.hpp"
#include "ridechain/matching.hpp"
#include "ridechain/trips.hpp"
#include "ridechain/zksm.hpp"

namespace ridechain::agents {

using crypto::AttestationSignature;
using crypto::G1;
using crypto::KeyPair;
using crypto::RandomSource;
using crypto::Scalar;
using ledger::Address;
using ledger::Amount;
using ledger::json;
using trips::Timestamp;

// ---------------------------------------------------------------------------
// Challenge-response check that the person at the pickup holds the request key.

class AuthSession {
 public:
  AuthSession(const G1& request_key, RandomSource& rng);

  const Scalar& nonce() const { return nonce_; }
  // Consumes the session. Throws Error(kImpersonationDetected) unless the
  // response signs this session's nonce under the request key.
  bool verify(const AttestationSignature& response);

 private:
  G1 request_key_;
  Scalar nonce_;
  bool used_ = false;
};

Bytes challenge_message(const Scalar& nonce);
AttestationSignature answer_challenge(const KeyPair& key, const Scalar& nonce,
                                      RandomSource& rng);
// One full round: fresh nonce, response by `responder`, verification.
bool mutual_authenticate(const G1& request_key, const KeyPair& responder, RandomSource& rng);

// ---------------------------------------------------------------------------
// Scenario description.

enum class DriverProfile { kHonest, kNoShow, kClaimAndAbandon, kDistanceCheat, kUncommitted };
enum class RiderBehavior { kHonest, kFakeReservation, kRiggedSetup, kForgedDistance, kStopSigning };

std::string_view profile_name(DriverProfile p);
std::string_view behavior_name(RiderBehavior b);
std::optional<DriverProfile> parse_profile(std::string_view s);
std::optional<RiderBehavior> parse_behavior(std::string_view s);

struct Economy {
  Amount rider_balance = 10'000;
  Amount driver_balance = 10'000;
  Amount bond = 1'000;
  Amount rider_deposit = 50;
  Amount driver_deposit = 50;
};

struct Timing {
  Timestamp request_lead = 1800;   // request published this long before pickup
  Timestamp offer_window = 300;    // request deadline after publication
  Timestamp accept_window = 120;   // driver deposit window after selection
  Timestamp fine_grace = 600;      // deposit expiration after the pickup window
  Timestamp segment_s = 60;        // distance proof cadence
  Timestamp payment_grace = 900;   // payment expiration after the last planned segment
  double distance_unit_m = 1000;   // metres per billed distance unit
};

struct RiderTrip {
  trips::DesiredTrip desired;
  std::optional<std::uint32_t> max_offers;
};

struct RiderSpec {
  std::string name;
  std::vector<RiderTrip> trips;  // one fresh address per trip
  matching::MatchPreferences prefs;
  RiderBehavior behavior = RiderBehavior::kHonest;
  bool impostor_attempt = false;
};

struct DriverSpec {
  std::string name;
  trips::PlannedTrip route;
  Amount bid = 1;  // per distance unit
  DriverProfile profile = DriverProfile::kHonest;
};

struct LocationProverSpec {
  std::string id;
  Coverage coverage;
};

struct Scenario {
  trips::BoundingBox box;
  int rows = 1;
  int cols = 1;
  std::int64_t interval_s = trips::kDefaultIntervalSeconds;
  int precision = trips::kDefaultPrecision;
  std::size_t zksm_k = 16;
  double reputation_threshold = 0.5;
  Economy economy;
  Timing timing;
  std::vector<RiderSpec> riders;
  std::vector<DriverSpec> drivers;
  std::vector<LocationProverSpec> location_provers;
};

// Throws Error(kScenarioError) naming the first problem.
void validate(const Scenario& s);

// ---------------------------------------------------------------------------
// Results.

enum class Outcome {
  kCompleted,
  kNoOffers,
  kNoFeasibleOffer,
  kDriverNotCommitted,
  kSetupRejected,
  kFinedRecovered,
  kRiderNoShow,
  kAbandoned,
  kPartial,
  kAborted,
};

std::string_view outcome_name(Outcome o);

struct TripRecord {
  std::string rider;
  std::size_t trip_index = 0;
  Address request_address;
  std::optional<std::uint64_t> request_id;
  std::optional<std::string> driver;
  std::size_t offers = 0;
  Outcome outcome = Outcome::kAborted;
  std::string detail;
  std::optional<Address> deposit;
  std::optional<Address> payment;
  std::uint64_t distance_units = 0;
  std::uint64_t prepaid_units = 0;
  std::uint64_t segments_planned = 0;
  std::uint64_t segments_signed = 0;
  Amount paid_segments = 0;
  bool impersonation_detected = false;
  bool abandonment_reported = false;

  json to_json() const;
};

struct DriverRecordOut {
  std::string name;
  Address address;
  DriverProfile profile;
};

struct PhaseStats {
  std::uint64_t count = 0;
  double total_ms = 0;
  double mean_ms() const { return count ? total_ms / static_cast<double>(count) : 0.0; }
};

struct RunStats {
  PhaseStats setup;
  PhaseStats audit;
  PhaseStats prove;
  PhaseStats verify;
  std::uint64_t proofs_generated = 0;
  std::uint64_t proofs_accepted = 0;
  std::size_t proof_bytes = zksm::kProofBytes;
  std::uint64_t transactions = 0;
  std::uint64_t rejected_transactions = 0;
};

struct SimulationResult {
  std::map<Address, Amount> genesis;
  ledger::LedgerState final_state;
  Address registry;
  std::vector<TripRecord> trips;
  std::vector<DriverRecordOut> drivers;
  // Exact coordinates each rider asked for, for privacy scans.
  std::map<std::string, std::vector<trips::DesiredTrip>> rider_trips;
  RunStats stats;
};

// Deterministic given (scenario, seed) except for RunStats timings.
SimulationResult run_scenario(const Scenario& scenario, std::uint64_t seed);

// Textual forms under which an exact coordinate could leak: fixed 5 and 6
// decimal strings, the shortest round-trip decimal, quantized integers and
// the hex of its location encoding.
std::vector<std::string> coordinate_forms(const GeoPoint& p, int precision);

// Riders' exact pickup or dropoff forms found in `serialized` (whole tokens
// only), plus request addresses shared between trips. Empty means clean.
std::vector<std::string> privacy_violations(const SimulationResult& result,
                                            std::string_view serialized, int precision);

}  // namespace ridechain::agents
