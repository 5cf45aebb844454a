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

#include "ridechain/ledger.hpp"

#include <algorithm>

#include "ridechain/crypto/hash.hpp"

namespace ridechain::ledger {
namespace {

constexpr std::string_view kAddressTag = "ridechain/address/v1";
constexpr std::string_view kContractAddressTag = "ridechain/contract-address/v1";
constexpr std::string_view kTxTag = "ridechain/tx/v1";
constexpr std::size_t kMaxCallDepth = 8;

Address address_from_digest(const std::array<std::uint8_t, 32>& d) {
  Address a;
  std::copy_n(d.begin(), a.bytes.size(), a.bytes.begin());
  return a;
}

}  // namespace

Address Address::from_hex(std::string_view hex) {
  Bytes b = ridechain::from_hex(hex);
  RIDECHAIN_ENFORCE(b.size() == 20, Errc::kInvalidEncoding, "address must be 20 bytes");
  Address a;
  std::copy(b.begin(), b.end(), a.bytes.begin());
  return a;
}

bool Address::is_zero() const {
  return std::all_of(bytes.begin(), bytes.end(), [](std::uint8_t b) { return b == 0; });
}

Address derive_address(const crypto::G1& pub) {
  Bytes buf;
  append(buf, kAddressTag);
  append(buf, crypto::encode(pub));
  return address_from_digest(crypto::sha256(buf));
}

Address derive_contract_address(const Address& creator, std::uint64_t index) {
  Bytes buf;
  append(buf, kContractAddressTag);
  append(buf, creator.bytes);
  append_u64(buf, index);
  return address_from_digest(crypto::sha256(buf));
}

json Event::to_json() const {
  return {{"seq", seq},
          {"tx", tx},
          {"time", time},
          {"contract", contract.hex()},
          {"name", name},
          {"payload", payload}};
}

Amount LedgerState::balance(const Address& a) const {
  auto it = balances.find(a);
  return it == balances.end() ? 0 : it->second;
}

std::uint64_t LedgerState::nonce(const Address& a) const {
  auto it = nonces.find(a);
  return it == nonces.end() ? 0 : it->second;
}

Amount LedgerState::total_supply() const {
  Amount total = 0;
  for (const auto& [_, v] : balances) total += v;
  return total;
}

const Contract* LedgerState::contract(const Address& a) const {
  auto it = contracts.find(a);
  return it == contracts.end() ? nullptr : it->second.get();
}

json LedgerState::to_json() const {
  json bal = json::object();
  for (const auto& [a, v] : balances) bal[a.hex()] = v;
  json non = json::object();
  for (const auto& [a, v] : nonces) non[a.hex()] = v;
  json con = json::object();
  for (const auto& [a, c] : contracts) {
    con[a.hex()] = {{"kind", std::string(c->kind())}, {"state", c->state()}};
  }
  json ev = json::array();
  for (const auto& e : events) ev.push_back(e.to_json());
  return {{"now", now},   {"tx_count", tx_count}, {"balances", bal},
          {"nonces", non}, {"contracts", con},    {"events", ev}};
}

std::string_view tx_kind_name(TxKind k) {
  switch (k) {
    case TxKind::kTransfer:
      return "transfer";
    case TxKind::kCall:
      return "call";
    case TxKind::kDeploy:
      return "deploy";
  }
  return "?";
}

Bytes Transaction::signing_payload() const {
  Bytes buf;
  append(buf, kTxTag);
  append(buf, crypto::encode(sender_key));
  append_u64(buf, nonce);
  append_u64(buf, static_cast<std::uint64_t>(submitted_at));
  buf.push_back(static_cast<std::uint8_t>(kind));
  append(buf, target.bytes);
  append_u64(buf, value);
  append_field(buf, as_bytes(method));
  append_field(buf, as_bytes(args.dump()));
  return buf;
}

void Transaction::sign(const crypto::KeyPair& key, crypto::RandomSource& rng) {
  sender_key = key.pub;
  sig = crypto::sign(key, signing_payload(), rng);
}

json Transaction::to_json() const {
  return {{"sender", sender().hex()},
          {"nonce", nonce},
          {"submitted_at", submitted_at},
          {"kind", std::string(tx_kind_name(kind))},
          {"target", target.hex()},
          {"value", value},
          {"method", method},
          {"args", args}};
}

// Scratch copy of the ledger for one transaction.
class Transition {
 public:
  Transition(const LedgerState& base, const ContractRegistry& registry, Address origin,
             crypto::G1 origin_key)
      : base_(base),
        registry_(registry),
        origin_(origin),
        origin_key_(origin_key),
        balances_(base.balances),
        nonces_(base.nonces),
        contracts_(base.contracts) {}

  Timestamp now() const { return base_.now; }
  const Address& origin() const { return origin_; }
  const crypto::G1& origin_key() const { return origin_key_; }

  Amount balance(const Address& a) const {
    auto it = balances_.find(a);
    return it == balances_.end() ? 0 : it->second;
  }

  void move(const Address& from, const Address& to, Amount amount, const Address& by,
            Errc shortfall) {
    if (amount == 0) return;
    RIDECHAIN_ENFORCE(balance(from) >= amount, shortfall, "balance too low for transfer");
    Amount& dst = balances_[to];
    RIDECHAIN_ENFORCE(dst + amount >= dst, Errc::kContractRevert, "balance overflow");
    balances_[from] -= amount;
    dst += amount;
    emit(by, "Transfer", {{"from", from.hex()}, {"to", to.hex()}, {"amount", amount}});
  }

  void emit(const Address& contract, std::string name, json payload) {
    Event e;
    e.seq = base_.events.size() + events_.size();
    e.tx = base_.tx_count;
    e.time = base_.now;
    e.contract = contract;
    e.name = std::move(name);
    e.payload = std::move(payload);
    events_.push_back(std::move(e));
  }

  const Contract* peek(const Address& a) const {
    if (auto it = dirty_.find(a); it != dirty_.end()) return it->second.get();
    auto it = contracts_.find(a);
    return it == contracts_.end() ? nullptr : it->second.get();
  }

  json invoke(const Address& target, const Address& sender, const std::string& method,
              const json& args, Amount value, Errc shortfall) {
    RIDECHAIN_ENFORCE(peek(target) != nullptr, Errc::kUnknownContract,
                      "no contract at " + target.hex());
    RIDECHAIN_ENFORCE(!active_.count(target), Errc::kContractRevert, "reentrant call");
    RIDECHAIN_ENFORCE(active_.size() < kMaxCallDepth, Errc::kContractRevert,
                      "call depth exceeded");
    move(sender, target, value, target, shortfall);
    Contract& c = mutable_contract(target);
    active_.insert(target);
    CallContext ctx(*this, target, sender, value);
    json result = c.call(ctx, method, args);
    active_.erase(target);
    return result;
  }

  Address create(std::string_view kind, const json& args, const Address& creator,
                 std::uint64_t index, Amount value, Errc shortfall) {
    auto f = registry_.find(kind);
    RIDECHAIN_ENFORCE(f != registry_.end(), Errc::kUnknownContract,
                      "unknown contract kind " + std::string(kind));
    const Address addr = derive_contract_address(creator, index);
    RIDECHAIN_ENFORCE(peek(addr) == nullptr && !balances_.count(addr), Errc::kContractRevert,
                      "address collision");
    std::shared_ptr<Contract> c = f->second();
    dirty_[addr] = c;
    contracts_[addr] = c;
    balances_[addr] = 0;
    move(creator, addr, value, addr, shortfall);
    active_.insert(addr);
    CallContext ctx(*this, addr, creator, value);
    c->init(ctx, args);
    active_.erase(addr);
    return addr;
  }

  // Contracts use their nonce as a creation counter.
  std::uint64_t next_index(const Address& creator) { return nonces_[creator]++; }
  void bump_nonce(const Address& a) { ++nonces_[a]; }

  std::vector<Event> commit(LedgerState& state) {
    for (auto& [a, c] : dirty_) contracts_[a] = std::move(c);
    state.balances = std::move(balances_);
    state.nonces = std::move(nonces_);
    state.contracts = std::move(contracts_);
    state.events.insert(state.events.end(), events_.begin(), events_.end());
    ++state.tx_count;
    return std::move(events_);
  }

 private:
  Contract& mutable_contract(const Address& a) {
    if (auto it = dirty_.find(a); it != dirty_.end()) return *it->second;
    std::shared_ptr<Contract> copy = contracts_.at(a)->clone();
    dirty_[a] = copy;
    contracts_[a] = copy;
    return *copy;
  }

  const LedgerState& base_;
  const ContractRegistry& registry_;
  Address origin_;
  crypto::G1 origin_key_;
  std::map<Address, Amount> balances_;
  std::map<Address, std::uint64_t> nonces_;
  std::map<Address, std::shared_ptr<const Contract>> contracts_;
  std::map<Address, std::shared_ptr<Contract>> dirty_;
  std::set<Address> active_;
  std::vector<Event> events_;
};

CallContext::CallContext(Transition& tr, Address self, Address sender, Amount value)
    : tr_(tr), self_(self), sender_(sender), value_(value) {}

const Address& CallContext::origin() const { return tr_.origin(); }
const crypto::G1& CallContext::origin_key() const { return tr_.origin_key(); }
Timestamp CallContext::now() const { return tr_.now(); }
Amount CallContext::balance(const Address& a) const { return tr_.balance(a); }

void CallContext::transfer(const Address& to, Amount amount) {
  tr_.move(self_, to, amount, self_, Errc::kContractRevert);
}

void CallContext::emit(std::string name, json payload) {
  tr_.emit(self_, std::move(name), std::move(payload));
}

Address CallContext::spawn(std::string_view kind, const json& args, Amount value) {
  return tr_.create(kind, args, self_, tr_.next_index(self_), value, Errc::kContractRevert);
}

json CallContext::call(const Address& target, const std::string& method, const json& args,
                       Amount value) {
  return tr_.invoke(target, self_, method, args, value, Errc::kContractRevert);
}

const Contract* CallContext::peek(const Address& a) const { return tr_.peek(a); }

std::string_view CallContext::kind_of(const Address& a) const {
  const Contract* c = tr_.peek(a);
  return c ? c->kind() : std::string_view{};
}

void CallContext::revert(std::string_view msg) const {
  throw Error(Errc::kContractRevert, std::string(msg));
}

Receipt apply_transaction(LedgerState& state, const Transaction& tx,
                          const ContractRegistry& registry) {
  const Address sender = tx.sender();
  RIDECHAIN_ENFORCE(!tx.sender_key.is_identity() &&
                        crypto::verify(tx.sender_key, tx.signing_payload(), tx.sig),
                    Errc::kBadSignature, "transaction signature does not verify");
  RIDECHAIN_ENFORCE(tx.nonce == state.nonce(sender), Errc::kBadNonce, "unexpected nonce");
  RIDECHAIN_ENFORCE(tx.submitted_at <= state.now, Errc::kInvalidArgument,
                    "transaction from the future");
  RIDECHAIN_ENFORCE(state.balance(sender) >= tx.value, Errc::kInsufficientFunds,
                    "value exceeds sender balance");

  Transition tr(state, registry, sender, tx.sender_key);
  Receipt r;
  try {
    switch (tx.kind) {
      case TxKind::kTransfer:
        RIDECHAIN_ENFORCE(tr.peek(tx.target) == nullptr, Errc::kContractRevert,
                          "plain transfer to a contract");
        tr.move(sender, tx.target, tx.value, sender, Errc::kInsufficientFunds);
        break;
      case TxKind::kCall:
        r.result = tr.invoke(tx.target, sender, tx.method, tx.args, tx.value,
                             Errc::kInsufficientFunds);
        break;
      case TxKind::kDeploy:
        r.created =
            tr.create(tx.method, tx.args, sender, tx.nonce, tx.value, Errc::kInsufficientFunds);
        break;
    }
  } catch (const Error&) {
    throw;
  } catch (const std::exception& e) {
    // Malformed arguments surface as library exceptions inside contract code.
    throw Error(Errc::kContractRevert, e.what());
  }
  tr.bump_nonce(sender);
  r.events = tr.commit(state);
  r.ok = true;
  return r;
}

void advance_time(LedgerState& state, Timestamp delta) {
  RIDECHAIN_ENFORCE(delta >= 0, Errc::kInvalidArgument, "time cannot move backward");
  state.now += delta;
}

Ledger::Ledger(std::map<Address, Amount> genesis, ContractRegistry registry)
    : registry_(std::move(registry)) {
  state_.balances = std::move(genesis);
}

Address Ledger::genesis_deploy(std::string_view kind, const json& args, const Address& creator,
                               Amount endowment) {
  RIDECHAIN_ENFORCE(state_.tx_count == 0, Errc::kInvalidArgument,
                    "genesis contracts must precede transactions");
  Transition tr(state_, registry_, creator, crypto::G1::identity());
  Address addr = tr.create(kind, args, creator, tr.next_index(creator), endowment,
                           Errc::kInsufficientFunds);
  tr.commit(state_);
  state_.tx_count = 0;
  return addr;
}

Receipt Ledger::submit(const Transaction& tx) {
  try {
    return apply_transaction(state_, tx, registry_);
  } catch (const Error& e) {
    Receipt r;
    r.ok = false;
    r.code = e.code();
    r.error = e.what();
    return r;
  }
}

Receipt Ledger::send(const Wallet& from, TxKind kind, const Address& target, Amount value,
                     const std::string& method, const json& args, crypto::RandomSource& rng) {
  Transaction tx;
  tx.nonce = state_.nonce(from.address);
  tx.submitted_at = state_.now;
  tx.kind = kind;
  tx.target = target;
  tx.value = value;
  tx.method = method;
  tx.args = args;
  tx.sign(from.key, rng);
  return submit(tx);
}

void Ledger::advance_time(Timestamp delta) { ridechain::ledger::advance_time(state_, delta); }

void Ledger::advance_to(Timestamp t) {
  RIDECHAIN_ENFORCE(t >= state_.now, Errc::kInvalidArgument, "time cannot move backward");
  state_.now = t;
}

}  // namespace ridechain::ledger
