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

#include <random>

#include "gtest/gtest.h"

#include "ridechain/ledger.hpp"

namespace ridechain::ledger {
namespace {

using crypto::DeterministicRandom;
using crypto::KeyPair;

// Holds funds; "fail" moves money and emits before reverting.
class Vault final : public Contract {
 public:
  std::string_view kind() const override { return "Vault"; }
  std::unique_ptr<Contract> clone() const override { return std::make_unique<Vault>(*this); }
  void init(CallContext& ctx, const json& args) override {
    owner_ = ctx.sender();
    limit_ = args.value("limit", Amount{0});
  }
  json call(CallContext& ctx, const std::string& method, const json& args) override {
    if (method == "deposit") {
      calls_++;
      return ctx.self_balance();
    }
    if (method == "withdraw") {
      ctx.require(ctx.sender() == owner_, "not owner");
      ctx.transfer(ctx.sender(), args.at("amount").get<Amount>());
      calls_++;
      return nullptr;
    }
    if (method == "fail") {
      calls_ += 100;
      ctx.transfer(ctx.sender(), ctx.self_balance());
      ctx.emit("Doomed", json::object());
      ctx.revert("always fails");
    }
    if (method == "child") {
      Address a = ctx.spawn("Vault", json::object(), args.at("amount").get<Amount>());
      return a.hex();
    }
    if (method == "reenter") {
      return ctx.call(ctx.self(), "deposit", json::object());
    }
    if (method == "limit") {
      ctx.require(ctx.value() <= limit_, "over limit");
      return nullptr;
    }
    ctx.revert("unknown method");
  }
  json state() const override {
    return {{"owner", owner_.hex()}, {"calls", calls_}, {"limit", limit_}};
  }

 private:
  Address owner_;
  std::uint64_t calls_ = 0;
  Amount limit_ = 0;
};

ContractRegistry registry() {
  ContractRegistry r;
  r.emplace("Vault", [] { return std::make_unique<Vault>(); });
  return r;
}

struct Fixture {
  DeterministicRandom rng{7};
  Wallet alice = Wallet::from_key(KeyPair::generate(rng));
  Wallet bob = Wallet::from_key(KeyPair::generate(rng));
  Ledger ledger{{{alice.address, 1000}, {bob.address, 500}}, registry()};
};

TEST(Address, KnownVector) {
  const KeyPair one = KeyPair::from_secret(crypto::Scalar::one());
  const Address a = derive_address(one.pub);
  EXPECT_EQ(a.hex(), "c32317609fc41f25f0d805cb6a84b2fef8c06815");
  EXPECT_EQ(derive_contract_address(a, 7).hex(), "bafd24d19579235f996a6b67385d8cdc79efd1e1");
  EXPECT_EQ(Address::from_hex(a.hex()), a);
}

TEST(Address, DistinctForFreshKeys) {
  DeterministicRandom rng(1);
  std::set<Address> seen;
  for (int i = 0; i < 200; ++i) {
    const KeyPair k = KeyPair::generate(rng);
    EXPECT_EQ(derive_address(k.pub), derive_address(k.pub));
    EXPECT_TRUE(seen.insert(derive_address(k.pub)).second);
  }
}

TEST(Ledger, TransferFullBalance) {
  Fixture f;
  Receipt r = f.ledger.send(f.alice, TxKind::kTransfer, f.bob.address, 1000, "", {}, f.rng);
  ASSERT_TRUE(r.ok) << r.error;
  EXPECT_EQ(f.ledger.state().balance(f.alice.address), 0u);
  EXPECT_EQ(f.ledger.state().balance(f.bob.address), 1500u);
  EXPECT_EQ(f.ledger.state().nonce(f.alice.address), 1u);
  ASSERT_EQ(r.events.size(), 1u);
  EXPECT_EQ(r.events[0].name, "Transfer");
}

TEST(Ledger, TransferOverBalanceLeavesStateUnchanged) {
  Fixture f;
  const std::string before = f.ledger.state().to_json().dump();
  Receipt r = f.ledger.send(f.alice, TxKind::kTransfer, f.bob.address, 1001, "", {}, f.rng);
  EXPECT_FALSE(r.ok);
  EXPECT_EQ(r.code, Errc::kInsufficientFunds);
  EXPECT_EQ(f.ledger.state().to_json().dump(), before);
}

TEST(Ledger, RevertedCallIsAtomic) {
  Fixture f;
  Receipt d = f.ledger.send(f.alice, TxKind::kDeploy, {}, 300, "Vault", json::object(), f.rng);
  ASSERT_TRUE(d.ok) << d.error;
  const Address vault = *d.created;
  EXPECT_EQ(f.ledger.state().balance(vault), 300u);

  const std::string before = f.ledger.state().to_json().dump();
  Receipt r = f.ledger.send(f.alice, TxKind::kCall, vault, 50, "fail", json::object(), f.rng);
  EXPECT_FALSE(r.ok);
  EXPECT_EQ(r.code, Errc::kContractRevert);
  // Attached value and the contract's own transfer are both rolled back.
  EXPECT_EQ(f.ledger.state().to_json().dump(), before);
  EXPECT_EQ(f.ledger.state().balance(f.alice.address), 700u);
}

TEST(Ledger, OwnerWithdrawAndForeignWithdraw) {
  Fixture f;
  const Address vault =
      *f.ledger.send(f.alice, TxKind::kDeploy, {}, 300, "Vault", json::object(), f.rng).created;
  EXPECT_FALSE(f.ledger.send(f.bob, TxKind::kCall, vault, 0, "withdraw", {{"amount", 1}}, f.rng).ok);
  Receipt r = f.ledger.send(f.alice, TxKind::kCall, vault, 0, "withdraw", {{"amount", 120}}, f.rng);
  ASSERT_TRUE(r.ok) << r.error;
  EXPECT_EQ(f.ledger.state().balance(vault), 180u);
  EXPECT_EQ(f.ledger.state().balance(f.alice.address), 820u);
  EXPECT_EQ(f.ledger.view<Vault>(vault)->state()["calls"], 1);
}

TEST(Ledger, MalformedArgumentsRevert) {
  Fixture f;
  const Address vault =
      *f.ledger.send(f.alice, TxKind::kDeploy, {}, 10, "Vault", json::object(), f.rng).created;
  Receipt r = f.ledger.send(f.alice, TxKind::kCall, vault, 0, "withdraw", {{"amount", "x"}}, f.rng);
  EXPECT_FALSE(r.ok);
  EXPECT_EQ(r.code, Errc::kContractRevert);
}

TEST(Ledger, SpawnedContractsAndReentrancy) {
  Fixture f;
  const Address vault =
      *f.ledger.send(f.alice, TxKind::kDeploy, {}, 100, "Vault", json::object(), f.rng).created;
  Receipt c = f.ledger.send(f.alice, TxKind::kCall, vault, 0, "child", {{"amount", 40}}, f.rng);
  ASSERT_TRUE(c.ok) << c.error;
  const Address child = Address::from_hex(c.result.get<std::string>());
  EXPECT_EQ(child, derive_contract_address(vault, 0));
  EXPECT_EQ(f.ledger.state().balance(child), 40u);
  EXPECT_EQ(f.ledger.state().balance(vault), 60u);
  EXPECT_EQ(f.ledger.view<Vault>(child)->state()["owner"], vault.hex());

  Receipt re = f.ledger.send(f.alice, TxKind::kCall, vault, 0, "reenter", json::object(), f.rng);
  EXPECT_FALSE(re.ok);
  EXPECT_EQ(re.code, Errc::kContractRevert);
}

TEST(Ledger, UnknownTargets) {
  Fixture f;
  EXPECT_EQ(f.ledger.send(f.alice, TxKind::kCall, f.bob.address, 0, "x", {}, f.rng).code,
            Errc::kUnknownContract);
  EXPECT_EQ(f.ledger.send(f.alice, TxKind::kDeploy, {}, 0, "Nope", {}, f.rng).code,
            Errc::kUnknownContract);
}

TEST(Ledger, TamperedSignaturesAreRejected) {
  Fixture f;
  Transaction tx;
  tx.kind = TxKind::kTransfer;
  tx.target = f.bob.address;
  tx.value = 10;
  tx.sign(f.alice.key, f.rng);
  const std::string before = f.ledger.state().to_json().dump();
  std::mt19937_64 mt(3);
  for (int i = 0; i < 40; ++i) {
    Transaction bad = tx;
    switch (i % 5) {
      case 0:
        bad.value += 1;
        break;
      case 1:
        bad.sig.s = bad.sig.s + crypto::Scalar::one();
        break;
      case 2:
        bad.sig.e = bad.sig.e + crypto::Scalar::from_u64(mt() | 1);
        break;
      case 3:
        bad.target = f.alice.address;
        break;
      case 4:
        bad.sender_key = f.bob.key.pub;
        break;
    }
    Receipt r = f.ledger.submit(bad);
    EXPECT_FALSE(r.ok);
    EXPECT_EQ(r.code, Errc::kBadSignature);
  }
  EXPECT_EQ(f.ledger.state().to_json().dump(), before);
  EXPECT_TRUE(f.ledger.submit(tx).ok);
  // Replay is refused by the nonce.
  EXPECT_EQ(f.ledger.submit(tx).code, Errc::kBadNonce);
}

TEST(Ledger, AdvanceTime) {
  LedgerState s;
  advance_time(s, 60);
  EXPECT_EQ(s.now, 60);
  advance_time(s, 0);
  EXPECT_EQ(s.now, 60);
  advance_time(s, 15);
  EXPECT_EQ(s.now, 75);
  EXPECT_THROW(advance_time(s, -1), Error);
}

TEST(Ledger, FutureTransactionsAreRejected) {
  Fixture f;
  Transaction tx;
  tx.kind = TxKind::kTransfer;
  tx.target = f.bob.address;
  tx.submitted_at = 10;
  tx.sign(f.alice.key, f.rng);
  EXPECT_EQ(f.ledger.submit(tx).code, Errc::kInvalidArgument);
  f.ledger.advance_to(10);
  EXPECT_TRUE(f.ledger.submit(tx).ok);
}

// Random transfers, deploys, calls and reverts; returns the final serialized state.
std::string random_run(std::uint64_t seed, bool check_supply) {
  DeterministicRandom rng(seed);
  std::vector<Wallet> wallets;
  std::map<Address, Amount> genesis;
  for (int i = 0; i < 5; ++i) {
    wallets.push_back(Wallet::from_key(KeyPair::generate(rng)));
    genesis[wallets.back().address] = 1000 + rng.below(1000);
  }
  Ledger ledger(genesis, registry());
  const Amount supply = ledger.state().total_supply();
  std::vector<Address> vaults;
  for (int step = 0; step < 120; ++step) {
    const Wallet& w = wallets[rng.below(wallets.size())];
    const Amount v = rng.below(400);
    switch (rng.below(5)) {
      case 0:
        ledger.send(w, TxKind::kTransfer, wallets[rng.below(wallets.size())].address, v, "", {},
                    rng);
        break;
      case 1:
        if (Receipt r = ledger.send(w, TxKind::kDeploy, {}, v, "Vault", {{"limit", 200}}, rng);
            r.ok) {
          vaults.push_back(*r.created);
        }
        break;
      default: {
        if (vaults.empty()) break;
        static const char* kMethods[] = {"deposit", "withdraw", "fail", "child", "limit"};
        const Address target = vaults[rng.below(vaults.size())];
        ledger.send(w, TxKind::kCall, target, v, kMethods[rng.below(5)],
                    {{"amount", rng.below(300)}}, rng);
        break;
      }
    }
    ledger.advance_time(static_cast<Timestamp>(rng.below(30)));
    if (check_supply) EXPECT_EQ(ledger.state().total_supply(), supply);
  }
  return ledger.state().to_json().dump();
}

TEST(LedgerProperty, ConservationOverRandomSequences) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) random_run(seed, true);
}

TEST(LedgerProperty, ReplayIsByteIdentical) {
  for (std::uint64_t seed = 100; seed < 105; ++seed) {
    EXPECT_EQ(random_run(seed, false), random_run(seed, false));
  }
}

}  // namespace
}  // namespace ridechain::ledger
