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

#include "ridechain/ledger.hpp"
#include "ridechain/zksm.hpp"

namespace ridechain::contracts {

using ledger::Address;
using ledger::Amount;
using ledger::CallContext;
using ledger::Contract;
using ledger::json;
using ledger::Timestamp;

inline constexpr std::string_view kBRide = "BRide";
inline constexpr std::string_view kTimeLockedDeposit = "TimeLockedDeposit";
inline constexpr std::string_view kRidePayment = "RidePayment";

enum class Standing { kHonest, kSuspect, kDishonest };

std::string_view standing_name(Standing s);

struct ReputationScore {
  std::uint64_t arrivals = 0;     // accepted arrival proofs
  std::uint64_t completions = 0;  // completed trips
  double beta = 1.0;              // completions / arrivals
  Standing standing = Standing::kHonest;
  bool new_driver = false;

  json to_json() const;
};

ReputationScore reputation_score(std::uint64_t arrivals, std::uint64_t completions,
                                 double threshold);

struct Offer {
  Address driver;
  std::string ciphertext;  // hex
  Amount bid = 0;
};

struct Request {
  Address requester;
  crypto::G1 requester_key;
  std::uint32_t origin_cell = 0;
  Timestamp window_start = 0;
  Timestamp window_end = 0;
  std::uint32_t destination_cell = 0;
  Timestamp deadline = 0;
  std::optional<std::uint32_t> max_offers;
  std::vector<Offer> offers;
  std::vector<Address> deposits;
};

struct Claim {
  Address rider;
  Address deposit;
  Amount amount = 0;
};

struct DriverRecord {
  crypto::G1 key;
  Amount bond = 0;
  std::uint64_t arrivals = 0;
  std::uint64_t completions = 0;
  std::vector<Claim> open_claims;
  Amount slashed = 0;
};

// Bidding, driver registry, reputation and the factory for per-trip contracts.
class BRide final : public Contract {
 public:
  std::string_view kind() const override { return kBRide; }
  std::unique_ptr<Contract> clone() const override { return std::make_unique<BRide>(*this); }
  void init(CallContext& ctx, const json& args) override;
  json call(CallContext& ctx, const std::string& method, const json& args) override;
  json state() const override;

  Amount bond_amount() const { return bond_amount_; }
  double threshold() const { return threshold_; }
  const std::vector<Request>& requests() const { return requests_; }
  const std::map<Address, DriverRecord>& drivers() const { return drivers_; }
  const DriverRecord* driver(const Address& a) const;
  ReputationScore reputation(const Address& driver) const;
  std::optional<Address> payment_for(const Address& deposit) const;

 private:
  json make_ride_request(CallContext& ctx, const json& args);
  json make_ride_offer(CallContext& ctx, const json& args);
  json register_driver(CallContext& ctx, const json& args);
  json open_deposit(CallContext& ctx, const json& args);
  json open_payment(CallContext& ctx, const json& args);
  json record(CallContext& ctx, bool completion);
  json report_abandonment(CallContext& ctx, const json& args);
  json slash_bond(CallContext& ctx, const json& args);
  void emit_reputation(CallContext& ctx, const Address& driver) const;
  Request& request_at(CallContext& ctx, const json& args);

  Address admin_;
  Amount bond_amount_ = 0;
  double threshold_ = 0.5;
  std::uint32_t num_cells_ = 0;
  std::map<std::string, std::string> lp_keys_;
  std::vector<Request> requests_;
  std::map<Address, DriverRecord> drivers_;
  std::map<Address, Address> deposit_driver_;   // deposit contract -> driver
  std::map<Address, Address> payment_driver_;   // payment contract -> driver
  std::map<Address, Address> deposit_payment_;  // deposit contract -> payment contract
  std::map<Address, bool> reported_;
};

enum class DepositStatus { kAwaitingDriverDeposit, kArmed, kClaimed, kFined, kExpired };

std::string_view deposit_status_name(DepositStatus s);

struct DepositTerms {
  Address rider;
  Address driver;
  std::uint64_t request_id = 0;
  Amount rider_deposit = 0;
  Amount driver_deposit = 0;
  zksm::ZkSetup setup;  // set, signatures and y; no trapdoor
  Timestamp accept_deadline = 0;
  Timestamp pickup_start = 0;
  Timestamp pickup_end = 0;
  Timestamp expiration = 0;
};

// Holds both deposits until the driver proves arrival or the rider fines a no-show.
class TimeLockedDeposit final : public Contract {
 public:
  std::string_view kind() const override { return kTimeLockedDeposit; }
  std::unique_ptr<Contract> clone() const override {
    return std::make_unique<TimeLockedDeposit>(*this);
  }
  void init(CallContext& ctx, const json& args) override;
  json call(CallContext& ctx, const std::string& method, const json& args) override;
  json state() const override;

  const DepositTerms& terms() const { return terms_; }
  DepositStatus status() const { return status_; }
  const std::optional<Address>& registry() const { return registry_; }

 private:
  json driver_deposit(CallContext& ctx);
  json proof_of_arrival(CallContext& ctx, const json& args);
  json fine_driver(CallContext& ctx);

  DepositTerms terms_;
  DepositStatus status_ = DepositStatus::kAwaitingDriverDeposit;
  std::optional<Address> registry_;
  std::map<std::string, std::string> lp_keys_;
};

// Canonical message both parties sign for one distance segment.
Bytes segment_message(const Address& payment, std::uint64_t index, std::uint64_t elapsed);

struct PaymentTerms {
  Address rider;
  crypto::G1 rider_key;
  Address driver;
  crypto::G1 driver_key;
  std::uint64_t distance = 0;
  Amount rate = 0;
  Amount escrow = 0;
  Timestamp expiration = 0;
};

// Pay-as-you-drive escrow released per co-signed distance segment.
class RidePayment final : public Contract {
 public:
  std::string_view kind() const override { return kRidePayment; }
  std::unique_ptr<Contract> clone() const override {
    return std::make_unique<RidePayment>(*this);
  }
  void init(CallContext& ctx, const json& args) override;
  json call(CallContext& ctx, const std::string& method, const json& args) override;
  json state() const override;

  const PaymentTerms& terms() const { return terms_; }
  std::uint64_t remaining() const { return remaining_; }
  std::uint64_t segments() const { return next_index_; }
  Amount paid() const { return paid_; }
  Amount refunded() const { return refunded_; }
  bool completed() const { return completed_; }
  const std::optional<Address>& registry() const { return registry_; }

 private:
  json proof_of_distance(CallContext& ctx, const json& args);
  json withdraw_funds(CallContext& ctx);

  PaymentTerms terms_;
  std::uint64_t remaining_ = 0;
  std::uint64_t next_index_ = 0;
  Amount paid_ = 0;
  Amount refunded_ = 0;
  bool completed_ = false;
  std::optional<Address> registry_;
};

ledger::ContractRegistry default_registry();

}  // namespace ridechain::contracts
