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

#include "ridechain/contracts.hpp"

#include <algorithm>

#include "ridechain/codec.hpp"

namespace ridechain::contracts {
namespace {

constexpr std::string_view kSegmentTag = "ridechain/segment/v1";

Address address_arg(const CallContext& ctx, const json& args, const char* key) {
  try {
    return Address::from_hex(args.at(key).get<std::string>());
  } catch (const Error&) {
    ctx.revert(std::string("malformed address: ") + key);
  }
}

template <class T>
T decoded(const CallContext& ctx, std::optional<T> v, std::string_view what) {
  if (!v) ctx.revert("malformed " + std::string(what));
  return *v;
}

// a * b / c without intermediate overflow.
Amount mul_div(Amount a, Amount b, Amount c) {
  return static_cast<Amount>(static_cast<unsigned __int128>(a) * b / c);
}

// Only a registered bidding contract may spawn per-trip contracts with delegated parties.
bool spawned_by_registry(const CallContext& ctx) {
  if (ctx.sender() == ctx.origin()) return false;
  ctx.require(ctx.kind_of(ctx.sender()) == kBRide, "unexpected creator");
  return true;
}

std::map<std::string, std::string> lp_key_map(const CallContext& ctx, const json& j) {
  std::map<std::string, std::string> out;
  for (const auto& [id, hex] : j.items()) {
    decoded(ctx, codec::g1_from_hex(hex.get<std::string>()), "location prover key");
    out.emplace(id, hex.get<std::string>());
  }
  return out;
}

}  // namespace

std::string_view standing_name(Standing s) {
  switch (s) {
    case Standing::kHonest:
      return "honest";
    case Standing::kSuspect:
      return "suspect";
    case Standing::kDishonest:
      return "dishonest";
  }
  return "?";
}

json ReputationScore::to_json() const {
  return {{"arrivals", arrivals},
          {"completions", completions},
          {"beta", beta},
          {"standing", std::string(standing_name(standing))},
          {"new_driver", new_driver}};
}

ReputationScore reputation_score(std::uint64_t arrivals, std::uint64_t completions,
                                 double threshold) {
  ReputationScore r;
  r.arrivals = arrivals;
  r.completions = completions;
  if (arrivals == 0) {
    r.new_driver = true;
    return r;
  }
  if (completions >= arrivals) return r;
  r.beta = static_cast<double>(completions) / static_cast<double>(arrivals);
  r.standing = r.beta <= threshold ? Standing::kDishonest : Standing::kSuspect;
  return r;
}

// ---------------------------------------------------------------------------
// BRide

void BRide::init(CallContext& ctx, const json& args) {
  admin_ = ctx.sender();
  bond_amount_ = args.at("bond").get<Amount>();
  threshold_ = args.value("threshold", 0.5);
  num_cells_ = args.at("num_cells").get<std::uint32_t>();
  ctx.require(num_cells_ > 0, "grid has no cells");
  ctx.require(threshold_ >= 0.0 && threshold_ < 1.0, "threshold outside [0, 1)");
  lp_keys_ = lp_key_map(ctx, args.value("lp_keys", json::object()));
}

json BRide::call(CallContext& ctx, const std::string& method, const json& args) {
  if (method == "make_ride_request") return make_ride_request(ctx, args);
  if (method == "make_ride_offer") return make_ride_offer(ctx, args);
  if (method == "register_driver") return register_driver(ctx, args);
  if (method == "open_deposit") return open_deposit(ctx, args);
  if (method == "open_payment") return open_payment(ctx, args);
  if (method == "record_arrival") return record(ctx, false);
  if (method == "record_completion") return record(ctx, true);
  if (method == "report_abandonment") return report_abandonment(ctx, args);
  if (method == "slash_bond") return slash_bond(ctx, args);
  ctx.revert("unknown method " + method);
}

Request& BRide::request_at(CallContext& ctx, const json& args) {
  const auto id = args.at("request_id").get<std::uint64_t>();
  ctx.require(id < requests_.size(), "unknown request");
  return requests_[id];
}

json BRide::make_ride_request(CallContext& ctx, const json& args) {
  ctx.require(ctx.value() == 0, "requests carry no value");
  ctx.require(ctx.sender() == ctx.origin(), "requests come from accounts");
  Request r;
  r.requester = ctx.sender();
  r.requester_key = ctx.origin_key();
  r.origin_cell = args.at("origin_cell").get<std::uint32_t>();
  r.window_start = args.at("window_start").get<Timestamp>();
  r.window_end = args.at("window_end").get<Timestamp>();
  r.destination_cell = args.at("destination_cell").get<std::uint32_t>();
  r.deadline = args.at("deadline").get<Timestamp>();
  if (args.contains("max_offers") && !args["max_offers"].is_null()) {
    r.max_offers = args["max_offers"].get<std::uint32_t>();
    ctx.require(*r.max_offers > 0, "max_offers must be positive");
  }
  ctx.require(r.origin_cell < num_cells_ && r.destination_cell < num_cells_,
              "cell outside grid");
  ctx.require(r.window_start < r.window_end, "empty pickup window");
  ctx.require(r.deadline >= ctx.now(), "deadline in the past");
  const std::uint64_t id = requests_.size();
  requests_.push_back(r);
  ctx.emit("RequestPublished", {{"request_id", id},
                                {"requester", r.requester.hex()},
                                {"public_key", codec::hex(r.requester_key)},
                                {"origin_cell", r.origin_cell},
                                {"window_start", r.window_start},
                                {"window_end", r.window_end},
                                {"destination_cell", r.destination_cell},
                                {"deadline", r.deadline},
                                {"max_offers", r.max_offers ? json(*r.max_offers) : json()}});
  return id;
}

json BRide::make_ride_offer(CallContext& ctx, const json& args) {
  ctx.require(ctx.value() == 0, "offers carry no value");
  Request& r = request_at(ctx, args);
  ctx.require(ctx.now() <= r.deadline, "offer deadline passed");
  ctx.require(!r.max_offers || r.offers.size() < *r.max_offers, "offer limit reached");
  ctx.require(drivers_.count(ctx.sender()) > 0, "sender is not a registered driver");
  for (const Offer& o : r.offers) ctx.require(o.driver != ctx.sender(), "driver already offered");
  Offer o;
  o.driver = ctx.sender();
  o.ciphertext = args.at("ciphertext").get<std::string>();
  o.bid = args.at("bid").get<Amount>();
  auto ct = decoded(ctx, codec::bytes_from_hex(o.ciphertext), "ciphertext");
  ctx.require(!ct.empty(), "empty ciphertext");
  ctx.require(o.bid > 0, "zero bid");
  const std::uint64_t index = r.offers.size();
  r.offers.push_back(o);
  ctx.emit("OfferSubmitted", {{"request_id", args.at("request_id")},
                              {"offer_index", index},
                              {"driver", o.driver.hex()},
                              {"bid", o.bid},
                              {"ciphertext", o.ciphertext}});
  return index;
}

json BRide::register_driver(CallContext& ctx, const json&) {
  ctx.require(ctx.sender() == ctx.origin(), "drivers register from accounts");
  ctx.require(!drivers_.count(ctx.sender()), "driver already registered");
  ctx.require(ctx.value() == bond_amount_, "bond must equal the configured amount");
  DriverRecord d;
  d.key = ctx.origin_key();
  d.bond = ctx.value();
  drivers_.emplace(ctx.sender(), d);
  ctx.emit("DriverRegistered", {{"driver", ctx.sender().hex()}, {"bond", d.bond}});
  emit_reputation(ctx, ctx.sender());
  return nullptr;
}

json BRide::open_deposit(CallContext& ctx, const json& args) {
  const std::uint64_t id = args.at("request_id").get<std::uint64_t>();
  Request& r = request_at(ctx, args);
  ctx.require(ctx.sender() == r.requester, "only the requester opens a deposit");
  const Address driver = address_arg(ctx, args, "driver");
  const bool offered = std::any_of(r.offers.begin(), r.offers.end(),
                                   [&](const Offer& o) { return o.driver == driver; });
  ctx.require(offered, "driver made no offer on this request");
  json init = {{"rider", r.requester.hex()},
               {"driver", driver.hex()},
               {"request_id", id},
               {"driver_deposit", args.at("driver_deposit")},
               {"set", args.at("set")},
               {"signatures", args.at("signatures")},
               {"y", args.at("y")},
               {"accept_deadline", args.at("accept_deadline")},
               {"pickup_start", r.window_start},
               {"pickup_end", r.window_end},
               {"expiration", args.at("expiration")},
               {"lp_keys", lp_keys_}};
  const Address tld = ctx.spawn(kTimeLockedDeposit, init, ctx.value());
  deposit_driver_[tld] = driver;
  r.deposits.push_back(tld);
  ctx.emit("DepositOpened", {{"request_id", id},
                             {"deposit", tld.hex()},
                             {"rider", r.requester.hex()},
                             {"driver", driver.hex()},
                             {"amount", ctx.value()}});
  return tld.hex();
}

json BRide::open_payment(CallContext& ctx, const json& args) {
  const Address tld_addr = address_arg(ctx, args, "deposit");
  ctx.require(deposit_driver_.count(tld_addr) > 0, "unknown deposit contract");
  ctx.require(!deposit_payment_.count(tld_addr), "payment already opened");
  const auto* tld = dynamic_cast<const TimeLockedDeposit*>(ctx.peek(tld_addr));
  ctx.require(tld != nullptr, "deposit contract missing");
  ctx.require(tld->status() == DepositStatus::kClaimed, "driver has not proven arrival");
  ctx.require(ctx.sender() == tld->terms().rider && ctx.sender() == ctx.origin(),
              "only the rider opens the payment");
  const Address driver = deposit_driver_.at(tld_addr);
  const Request& r = requests_.at(tld->terms().request_id);
  const Amount rate = args.at("rate").get<Amount>();
  const bool bid_matches = std::any_of(r.offers.begin(), r.offers.end(), [&](const Offer& o) {
    return o.driver == driver && o.bid == rate;
  });
  ctx.require(bid_matches, "rate differs from the accepted bid");
  json init = {{"rider", ctx.sender().hex()},
               {"rider_key", codec::hex(ctx.origin_key())},
               {"driver", driver.hex()},
               {"driver_key", codec::hex(drivers_.at(driver).key)},
               {"distance", args.at("distance")},
               {"rate", rate},
               {"expiration", args.at("expiration")}};
  const Address pay = ctx.spawn(kRidePayment, init, ctx.value());
  payment_driver_[pay] = driver;
  deposit_payment_[tld_addr] = pay;
  ctx.emit("PaymentOpened", {{"deposit", tld_addr.hex()},
                             {"payment", pay.hex()},
                             {"rider", ctx.sender().hex()},
                             {"driver", driver.hex()},
                             {"distance", args.at("distance")},
                             {"rate", rate},
                             {"amount", ctx.value()}});
  return pay.hex();
}

json BRide::record(CallContext& ctx, bool completion) {
  const auto& children = completion ? payment_driver_ : deposit_driver_;
  auto it = children.find(ctx.sender());
  ctx.require(it != children.end(), "caller is not a trip contract of this registry");
  DriverRecord& d = drivers_.at(it->second);
  if (completion) {
    ctx.require(d.completions < d.arrivals, "completion without arrival");
    ++d.completions;
  } else {
    ++d.arrivals;
  }
  emit_reputation(ctx, it->second);
  return nullptr;
}

json BRide::report_abandonment(CallContext& ctx, const json& args) {
  const Address tld_addr = address_arg(ctx, args, "deposit");
  ctx.require(deposit_driver_.count(tld_addr) > 0, "unknown deposit contract");
  ctx.require(!reported_.count(tld_addr), "abandonment already reported");
  const auto* tld = dynamic_cast<const TimeLockedDeposit*>(ctx.peek(tld_addr));
  ctx.require(tld && tld->status() == DepositStatus::kClaimed, "deposit was not claimed");
  ctx.require(ctx.sender() == tld->terms().rider, "only the rider reports abandonment");
  auto pay_it = deposit_payment_.find(tld_addr);
  ctx.require(pay_it != deposit_payment_.end(), "no payment contract for this trip");
  const auto* pay = dynamic_cast<const RidePayment*>(ctx.peek(pay_it->second));
  ctx.require(pay != nullptr, "payment contract missing");
  ctx.require(ctx.now() >= pay->terms().expiration, "payment still running");
  ctx.require(!pay->completed() && pay->segments() == 0, "trip was (partly) driven");
  const Address driver = deposit_driver_.at(tld_addr);
  Claim c{ctx.sender(), tld_addr, tld->terms().rider_deposit};
  drivers_.at(driver).open_claims.push_back(c);
  reported_[tld_addr] = true;
  ctx.emit("AbandonmentReported", {{"driver", driver.hex()},
                                   {"deposit", tld_addr.hex()},
                                   {"rider", c.rider.hex()},
                                   {"claim", c.amount}});
  return nullptr;
}

json BRide::slash_bond(CallContext& ctx, const json& args) {
  const Address driver = address_arg(ctx, args, "driver");
  auto it = drivers_.find(driver);
  ctx.require(it != drivers_.end(), "unknown driver");
  DriverRecord& d = it->second;
  ctx.require(reputation(driver).standing == Standing::kDishonest, "driver is not dishonest");
  ctx.require(!d.open_claims.empty(), "no open claims");
  Amount total = 0;
  for (const Claim& c : d.open_claims) total += c.amount;
  const Amount pool = d.bond;
  json payouts = json::array();
  Amount paid = 0;
  for (const Claim& c : d.open_claims) {
    const Amount share = total <= pool ? c.amount : mul_div(pool, c.amount, total);
    ctx.transfer(c.rider, share);
    paid += share;
    payouts.push_back({{"to", c.rider.hex()}, {"deposit", c.deposit.hex()}, {"amount", share}});
  }
  d.bond -= paid;
  d.slashed += paid;
  d.open_claims.clear();
  ctx.emit("BondSlashed", {{"driver", driver.hex()},
                           {"claims", total},
                           {"amount", paid},
                           {"payouts", payouts},
                           {"remaining_bond", d.bond}});
  return paid;
}

void BRide::emit_reputation(CallContext& ctx, const Address& driver) const {
  json payload = reputation(driver).to_json();
  payload["driver"] = driver.hex();
  ctx.emit("ReputationUpdated", payload);
}

const DriverRecord* BRide::driver(const Address& a) const {
  auto it = drivers_.find(a);
  return it == drivers_.end() ? nullptr : &it->second;
}

ReputationScore BRide::reputation(const Address& driver) const {
  const DriverRecord* d = this->driver(driver);
  return d ? reputation_score(d->arrivals, d->completions, threshold_)
           : reputation_score(0, 0, threshold_);
}

std::optional<Address> BRide::payment_for(const Address& deposit) const {
  auto it = deposit_payment_.find(deposit);
  if (it == deposit_payment_.end()) return std::nullopt;
  return it->second;
}

json BRide::state() const {
  json reqs = json::array();
  for (const Request& r : requests_) {
    json offers = json::array();
    for (const Offer& o : r.offers) {
      offers.push_back({{"driver", o.driver.hex()}, {"bid", o.bid}, {"ciphertext", o.ciphertext}});
    }
    json deps = json::array();
    for (const Address& a : r.deposits) deps.push_back(a.hex());
    reqs.push_back({{"requester", r.requester.hex()},
                    {"public_key", codec::hex(r.requester_key)},
                    {"origin_cell", r.origin_cell},
                    {"window_start", r.window_start},
                    {"window_end", r.window_end},
                    {"destination_cell", r.destination_cell},
                    {"deadline", r.deadline},
                    {"max_offers", r.max_offers ? json(*r.max_offers) : json()},
                    {"offers", offers},
                    {"deposits", deps}});
  }
  json drivers = json::object();
  for (const auto& [a, d] : drivers_) {
    json claims = json::array();
    for (const Claim& c : d.open_claims) {
      claims.push_back({{"rider", c.rider.hex()}, {"deposit", c.deposit.hex()}, {"amount", c.amount}});
    }
    json rep = reputation(a).to_json();
    rep["public_key"] = codec::hex(d.key);
    rep["bond"] = d.bond;
    rep["slashed"] = d.slashed;
    rep["open_claims"] = claims;
    drivers[a.hex()] = rep;
  }
  return {{"admin", admin_.hex()},   {"bond", bond_amount_},       {"threshold", threshold_},
          {"num_cells", num_cells_}, {"lp_keys", lp_keys_},        {"requests", reqs},
          {"drivers", drivers}};
}

// ---------------------------------------------------------------------------
// TimeLockedDeposit

std::string_view deposit_status_name(DepositStatus s) {
  switch (s) {
    case DepositStatus::kAwaitingDriverDeposit:
      return "awaiting_driver_deposit";
    case DepositStatus::kArmed:
      return "armed";
    case DepositStatus::kClaimed:
      return "claimed";
    case DepositStatus::kFined:
      return "fined";
    case DepositStatus::kExpired:
      return "expired";
  }
  return "?";
}

void TimeLockedDeposit::init(CallContext& ctx, const json& args) {
  if (spawned_by_registry(ctx)) {
    registry_ = ctx.sender();
    terms_.rider = address_arg(ctx, args, "rider");
  } else {
    terms_.rider = ctx.sender();
  }
  terms_.driver = address_arg(ctx, args, "driver");
  terms_.request_id = args.value("request_id", std::uint64_t{0});
  terms_.rider_deposit = ctx.value();
  terms_.driver_deposit = args.at("driver_deposit").get<Amount>();
  terms_.accept_deadline = args.at("accept_deadline").get<Timestamp>();
  terms_.pickup_start = args.at("pickup_start").get<Timestamp>();
  terms_.pickup_end = args.at("pickup_end").get<Timestamp>();
  terms_.expiration = args.at("expiration").get<Timestamp>();
  ctx.require(terms_.rider_deposit > 0, "rider deposit required");
  ctx.require(terms_.driver_deposit > 0, "driver deposit must be positive");
  ctx.require(terms_.accept_deadline <= terms_.pickup_start &&
                  terms_.pickup_start < terms_.pickup_end &&
                  terms_.pickup_end <= terms_.expiration,
              "inconsistent deadlines");

  const json& set = args.at("set");
  const json& sigs = args.at("signatures");
  ctx.require(set.is_array() && sigs.is_array() && set.size() == sigs.size() && set.size() >= 2,
              "set and signatures must be equal-length arrays of at least two");
  for (std::size_t i = 0; i < set.size(); ++i) {
    terms_.setup.set.push_back(
        decoded(ctx, codec::scalar_from_hex(set[i].get<std::string>()), "set element"));
    terms_.setup.signatures.push_back(
        decoded(ctx, codec::g1_from_hex(sigs[i].get<std::string>()), "set signature"));
  }
  terms_.setup.y = decoded(ctx, codec::g2_from_hex(args.at("y").get<std::string>()), "y");
  lp_keys_ = lp_key_map(ctx, args.value("lp_keys", json::object()));
}

json TimeLockedDeposit::call(CallContext& ctx, const std::string& method, const json& args) {
  if (method == "driver_deposit") return driver_deposit(ctx);
  if (method == "proof_of_arrival") return proof_of_arrival(ctx, args);
  if (method == "fine_driver") return fine_driver(ctx);
  ctx.revert("unknown method " + method);
}

json TimeLockedDeposit::driver_deposit(CallContext& ctx) {
  ctx.require(ctx.sender() == terms_.driver, "only the selected driver deposits");
  ctx.require(status_ == DepositStatus::kAwaitingDriverDeposit, "deposit already made");
  ctx.require(ctx.value() == terms_.driver_deposit, "wrong deposit amount");
  ctx.require(ctx.now() < terms_.accept_deadline, "acceptance window closed");
  ctx.require(ctx.now() < terms_.expiration, "contract expired");
  status_ = DepositStatus::kArmed;
  ctx.emit("DepositArmed", {{"driver", terms_.driver.hex()},
                            {"amount", ctx.value()},
                            {"balance", ctx.self_balance()}});
  return nullptr;
}

json TimeLockedDeposit::proof_of_arrival(CallContext& ctx, const json& args) {
  ctx.require(ctx.value() == 0, "proofs carry no value");
  ctx.require(ctx.sender() == terms_.driver, "only the selected driver proves arrival");
  ctx.require(status_ == DepositStatus::kArmed, "contract is not armed");
  ctx.require(ctx.now() >= terms_.pickup_start && ctx.now() < terms_.pickup_end,
              "outside the pickup window");

  const std::string lp = args.at("lp").get<std::string>();
  auto key_it = lp_keys_.find(lp);
  ctx.require(key_it != lp_keys_.end(), "unregistered location prover");
  const auto lp_key = *codec::g1_from_hex(key_it->second);

  const std::string proof_hex = args.at("proof").get<std::string>();
  const auto proof_bytes = decoded(ctx, codec::bytes_from_hex(proof_hex), "proof");
  const auto proof = decoded(ctx, zksm::decode_proof(proof_bytes), "proof");
  zksm::LPAttestation att;
  att.commitment =
      decoded(ctx, codec::g1_from_hex(args.at("commitment").get<std::string>()), "commitment");
  att.sig = decoded(ctx, codec::signature_from_hex(args.at("attestation").get<std::string>()),
                    "attestation");
  ctx.require(att.commitment == proof.C, "attestation covers a different commitment");
  ctx.require(zksm::verify_lp_attestation(lp_key, att), "invalid location attestation");
  ctx.require(zksm::verify(terms_.setup.y, proof), "invalid membership proof");

  const Amount amount = ctx.self_balance();
  ctx.transfer(terms_.driver, amount);
  status_ = DepositStatus::kClaimed;
  ctx.emit("ArrivalClaimed", {{"driver", terms_.driver.hex()},
                              {"amount", amount},
                              {"lp", lp},
                              {"y", codec::hex(terms_.setup.y)},
                              {"proof", proof_hex}});
  if (registry_) ctx.call(*registry_, "record_arrival", json::object());
  return nullptr;
}

json TimeLockedDeposit::fine_driver(CallContext& ctx) {
  ctx.require(ctx.value() == 0, "fines carry no value");
  ctx.require(ctx.sender() == terms_.rider, "only the rider may fine");
  ctx.require(ctx.now() >= terms_.expiration, "contract has not expired");
  const Amount amount = ctx.self_balance();
  if (status_ == DepositStatus::kArmed) {
    ctx.transfer(terms_.rider, amount);
    status_ = DepositStatus::kFined;
    ctx.emit("DriverFined",
             {{"driver", terms_.driver.hex()}, {"to", terms_.rider.hex()}, {"amount", amount}});
  } else if (status_ == DepositStatus::kAwaitingDriverDeposit) {
    ctx.transfer(terms_.rider, amount);
    status_ = DepositStatus::kExpired;
    ctx.emit("Refunded", {{"to", terms_.rider.hex()}, {"amount", amount}, {"reason", "expired"}});
  } else {
    ctx.revert("contract already settled");
  }
  return nullptr;
}

json TimeLockedDeposit::state() const {
  json set = json::array();
  json sigs = json::array();
  for (const auto& e : terms_.setup.set) set.push_back(codec::hex(e));
  for (const auto& s : terms_.setup.signatures) sigs.push_back(codec::hex(s));
  return {{"rider", terms_.rider.hex()},
          {"driver", terms_.driver.hex()},
          {"request_id", terms_.request_id},
          {"rider_deposit", terms_.rider_deposit},
          {"driver_deposit", terms_.driver_deposit},
          {"set", set},
          {"signatures", sigs},
          {"y", codec::hex(terms_.setup.y)},
          {"accept_deadline", terms_.accept_deadline},
          {"pickup_start", terms_.pickup_start},
          {"pickup_end", terms_.pickup_end},
          {"expiration", terms_.expiration},
          {"status", std::string(deposit_status_name(status_))},
          {"registry", registry_ ? json(registry_->hex()) : json()},
          {"lp_keys", lp_keys_}};
}

// ---------------------------------------------------------------------------
// RidePayment

Bytes segment_message(const Address& payment, std::uint64_t index, std::uint64_t elapsed) {
  Bytes m;
  append(m, kSegmentTag);
  append(m, payment.bytes);
  append_u64(m, index);
  append_u64(m, elapsed);
  return m;
}

void RidePayment::init(CallContext& ctx, const json& args) {
  if (spawned_by_registry(ctx)) {
    registry_ = ctx.sender();
    terms_.rider = address_arg(ctx, args, "rider");
    terms_.rider_key =
        decoded(ctx, codec::g1_from_hex(args.at("rider_key").get<std::string>()), "rider key");
    ctx.require(ledger::derive_address(terms_.rider_key) == terms_.rider, "rider key mismatch");
  } else {
    terms_.rider = ctx.sender();
    terms_.rider_key = ctx.origin_key();
  }
  terms_.driver = address_arg(ctx, args, "driver");
  terms_.driver_key =
      decoded(ctx, codec::g1_from_hex(args.at("driver_key").get<std::string>()), "driver key");
  ctx.require(ledger::derive_address(terms_.driver_key) == terms_.driver, "driver key mismatch");
  terms_.distance = args.at("distance").get<std::uint64_t>();
  terms_.rate = args.at("rate").get<Amount>();
  terms_.expiration = args.at("expiration").get<Timestamp>();
  ctx.require(terms_.distance > 0, "zero-distance trip");
  ctx.require(terms_.rate > 0, "zero rate");
  const auto escrow = static_cast<unsigned __int128>(terms_.distance) * terms_.rate;
  ctx.require(escrow == ctx.value(), "escrow must equal distance times rate");
  ctx.require(terms_.expiration > ctx.now(), "expiration in the past");
  terms_.escrow = ctx.value();
  remaining_ = terms_.distance;
}

json RidePayment::call(CallContext& ctx, const std::string& method, const json& args) {
  if (method == "proof_of_distance") return proof_of_distance(ctx, args);
  if (method == "withdraw_funds") return withdraw_funds(ctx);
  ctx.revert("unknown method " + method);
}

json RidePayment::proof_of_distance(CallContext& ctx, const json& args) {
  ctx.require(ctx.value() == 0, "proofs carry no value");
  ctx.require(ctx.sender() == terms_.rider, "only the rider submits distance proofs");
  ctx.require(!completed_, "trip already completed");
  ctx.require(ctx.now() < terms_.expiration, "payment expired");
  const auto index = args.at("index").get<std::uint64_t>();
  const auto elapsed = args.at("elapsed").get<std::uint64_t>();
  ctx.require(index == next_index_, "unexpected segment index");
  ctx.require(elapsed > 0 && elapsed <= remaining_, "elapsed distance out of range");
  const auto rider_sig = decoded(
      ctx, codec::signature_from_hex(args.at("rider_sig").get<std::string>()), "rider signature");
  const auto driver_sig =
      decoded(ctx, codec::signature_from_hex(args.at("driver_sig").get<std::string>()),
              "driver signature");
  const Bytes msg = segment_message(ctx.self(), index, elapsed);
  ctx.require(crypto::verify(terms_.rider_key, msg, rider_sig), "rider signature invalid");
  ctx.require(crypto::verify(terms_.driver_key, msg, driver_sig), "driver signature invalid");

  remaining_ -= elapsed;
  const std::uint64_t travelled = terms_.distance - remaining_;
  // Cumulative target keeps any rounding remainder for the final segment.
  const Amount amount = mul_div(terms_.escrow, travelled, terms_.distance) - paid_;
  ctx.transfer(terms_.driver, amount);
  paid_ += amount;
  ++next_index_;
  ctx.emit("SegmentPaid", {{"driver", terms_.driver.hex()},
                           {"index", index},
                           {"elapsed", elapsed},
                           {"amount", amount},
                           {"remaining", remaining_}});
  if (remaining_ == 0) {
    completed_ = true;
    ctx.emit("TripCompleted",
             {{"driver", terms_.driver.hex()}, {"distance", terms_.distance}, {"paid", paid_}});
    if (registry_) ctx.call(*registry_, "record_completion", json::object());
  }
  return amount;
}

json RidePayment::withdraw_funds(CallContext& ctx) {
  ctx.require(ctx.value() == 0, "withdrawals carry no value");
  ctx.require(ctx.sender() == terms_.rider, "only the rider withdraws");
  ctx.require(ctx.now() >= terms_.expiration, "payment has not expired");
  const Amount amount = ctx.self_balance();
  ctx.require(amount > 0, "nothing to withdraw");
  ctx.transfer(terms_.rider, amount);
  refunded_ += amount;
  ctx.emit("Refunded", {{"to", terms_.rider.hex()}, {"amount", amount}, {"reason", "withdraw"}});
  return amount;
}

json RidePayment::state() const {
  return {{"rider", terms_.rider.hex()},
          {"rider_key", codec::hex(terms_.rider_key)},
          {"driver", terms_.driver.hex()},
          {"driver_key", codec::hex(terms_.driver_key)},
          {"distance", terms_.distance},
          {"rate", terms_.rate},
          {"escrow", terms_.escrow},
          {"expiration", terms_.expiration},
          {"remaining", remaining_},
          {"segments", next_index_},
          {"paid", paid_},
          {"refunded", refunded_},
          {"completed", completed_},
          {"registry", registry_ ? json(registry_->hex()) : json()}};
}

ledger::ContractRegistry default_registry() {
  ledger::ContractRegistry r;
  r.emplace(std::string(kBRide), [] { return std::make_unique<BRide>(); });
  r.emplace(std::string(kTimeLockedDeposit), [] { return std::make_unique<TimeLockedDeposit>(); });
  r.emplace(std::string(kRidePayment), [] { return std::make_unique<RidePayment>(); });
  return r;
}

}  // namespace ridechain::contracts
