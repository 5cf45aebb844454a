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

#include <array>
#include <compare>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "nlohmann/json.hpp"

#include "ridechain/bytes.hpp"
#include "ridechain/crypto/schemes.hpp"
#include "ridechain/error.hpp"

namespace ridechain::ledger {

using Amount = std::uint64_t;
using Timestamp = std::int64_t;
using json = nlohmann::json;

struct Address {
  std::array<std::uint8_t, 20> bytes{};

  std::string hex() const { return to_hex(bytes); }
  static Address from_hex(std::string_view hex);
  bool is_zero() const;

  auto operator<=>(const Address&) const = default;
};

// First 20 bytes of SHA-256 over a tag and the compressed key.
Address derive_address(const crypto::G1& pub);
Address derive_contract_address(const Address& creator, std::uint64_t index);

struct Event {
  std::uint64_t seq = 0;
  std::uint64_t tx = 0;
  Timestamp time = 0;
  Address contract;
  std::string name;
  json payload;

  json to_json() const;
};

class CallContext;

// Contract instances are values: the ledger clones one before mutating it, so
// a reverted call never touches the committed copy.
class Contract {
 public:
  virtual ~Contract() = default;

  virtual std::string_view kind() const = 0;
  virtual std::unique_ptr<Contract> clone() const = 0;
  // Runs once at creation; ctx.value() is the endowment.
  virtual void init(CallContext& ctx, const json& args) = 0;
  virtual json call(CallContext& ctx, const std::string& method, const json& args) = 0;
  // Public state, as any ledger reader sees it.
  virtual json state() const = 0;
};

using ContractFactory = std::function<std::unique_ptr<Contract>()>;
using ContractRegistry = std::map<std::string, ContractFactory, std::less<>>;

struct LedgerState {
  Timestamp now = 0;
  std::map<Address, Amount> balances;
  std::map<Address, std::uint64_t> nonces;
  std::map<Address, std::shared_ptr<const Contract>> contracts;
  std::vector<Event> events;
  std::uint64_t tx_count = 0;

  Amount balance(const Address& a) const;
  std::uint64_t nonce(const Address& a) const;
  Amount total_supply() const;
  const Contract* contract(const Address& a) const;
  json to_json() const;
};

enum class TxKind { kTransfer, kCall, kDeploy };

std::string_view tx_kind_name(TxKind k);

struct Transaction {
  crypto::G1 sender_key;
  std::uint64_t nonce = 0;
  Timestamp submitted_at = 0;
  TxKind kind = TxKind::kCall;
  Address target;
  Amount value = 0;
  // Method name for calls, contract kind for deploys.
  std::string method;
  json args = json::object();
  crypto::AttestationSignature sig;

  Address sender() const { return derive_address(sender_key); }
  Bytes signing_payload() const;
  void sign(const crypto::KeyPair& key, crypto::RandomSource& rng);
  json to_json() const;
};

struct Receipt {
  bool ok = false;
  Errc code = Errc::kContractRevert;
  std::string error;
  std::vector<Event> events;
  json result;
  std::optional<Address> created;
};

class Transition;

// Execution environment of one contract frame.
class CallContext {
 public:
  CallContext(Transition& tr, Address self, Address sender, Amount value);

  const Address& self() const { return self_; }
  // Immediate caller: the signing account or the calling contract.
  const Address& sender() const { return sender_; }
  const Address& origin() const;
  const crypto::G1& origin_key() const;
  Amount value() const { return value_; }
  Timestamp now() const;

  Amount balance(const Address& a) const;
  Amount self_balance() const { return balance(self_); }
  // Moves funds out of this contract.
  void transfer(const Address& to, Amount amount);
  void emit(std::string name, json payload);

  // Creates a contract of a registered kind funded from this contract.
  Address spawn(std::string_view kind, const json& args, Amount value);
  json call(const Address& target, const std::string& method, const json& args,
            Amount value = 0);
  // Committed-or-pending state of another contract; null if absent.
  const Contract* peek(const Address& a) const;
  std::string_view kind_of(const Address& a) const;

  void require(bool cond, std::string_view msg) const {
    if (!cond) revert(msg);
  }
  [[noreturn]] void revert(std::string_view msg) const;

 private:
  Transition& tr_;
  Address self_;
  Address sender_;
  Amount value_;
};

// Applies `tx` atomically: on failure `state` is left untouched and the error
// is thrown. Block time is not changed.
Receipt apply_transaction(LedgerState& state, const Transaction& tx,
                          const ContractRegistry& registry);
void advance_time(LedgerState& state, Timestamp delta);

// Account handle for scripted actors.
struct Wallet {
  crypto::KeyPair key;
  Address address;

  static Wallet from_key(const crypto::KeyPair& key) { return {key, derive_address(key.pub)}; }
};

class Ledger {
 public:
  Ledger(std::map<Address, Amount> genesis, ContractRegistry registry);

  const LedgerState& state() const { return state_; }
  Timestamp now() const { return state_.now; }
  const ContractRegistry& registry() const { return registry_; }

  // Contract created without a transaction, before any block is applied.
  Address genesis_deploy(std::string_view kind, const json& args, const Address& creator,
                         Amount endowment = 0);

  // Never throws on transaction-level failure; the receipt carries it.
  Receipt submit(const Transaction& tx);
  Receipt send(const Wallet& from, TxKind kind, const Address& target, Amount value,
               const std::string& method, const json& args, crypto::RandomSource& rng);

  void advance_time(Timestamp delta);
  void advance_to(Timestamp t);

  template <class T>
  const T* view(const Address& a) const {
    return dynamic_cast<const T*>(state_.contract(a));
  }

 private:
  LedgerState state_;
  ContractRegistry registry_;
};

}  // namespace ridechain::ledger
