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
#include <set>

#include "gtest/gtest.h"

#include "ridechain/crypto/schemes.hpp"
#include "ridechain/error.hpp"

namespace ridechain::crypto {
namespace {

Scalar scalar_hex(std::string_view hex) {
  Bytes b = from_hex(std::string(64 - hex.size(), '0') + std::string(hex));
  return *decode_scalar(b);
}

TEST(HashToScalar, FrozenVectors) {
  // SHA-512 read big-endian, reduced mod r.
  EXPECT_EQ(hash_to_scalar({}),
            scalar_hex("2598166ab262568abb132d54873066190469e84fa7920cb5dc9b375831368eea"));
  EXPECT_EQ(hash_to_scalar(as_bytes("abc")),
            scalar_hex("298adb1d2c5c2dc3d81f1ae28021c71634e353b1aaebae8f1d42511c1bc70ae3"));
}

TEST(HashToScalar, OneByteChangesNeverCollide) {
  DeterministicRandom rng(1);
  std::set<Bytes> digests;
  for (int i = 0; i < 10000; ++i) {
    Bytes msg(1 + rng.below(64));
    rng.fill(msg);
    Bytes other = msg;
    other[rng.below(other.size())] ^= static_cast<std::uint8_t>(1 + rng.below(255));
    ASSERT_NE(hash_to_scalar(msg), hash_to_scalar(other));
  }
}

TEST(Context, SecondGeneratorMatchesIndependentDerivation) {
  // First try-and-increment hit, computed outside this library; smaller root.
  const auto& ctx = PairingContext::get();
  auto [x, y] = ctx.h().to_affine();
  EXPECT_EQ(to_hex(x.to_bytes()),
            "040226078876ef69dd6b46657db37ed6d9886f196ace41092c660f4bc7b9544f");
  EXPECT_EQ(to_hex(y.to_bytes()),
            "004eb0073fb47be7750e1f1304903eeef0736de92068ef612531efd608cca8fa");
  EXPECT_NE(ctx.h(), ctx.g());
  EXPECT_FALSE(ctx.gt().is_one());
  EXPECT_TRUE(ctx.gt().value().pow(std::span<const std::uint64_t>(Fr::kModulus)).is_one());
}

TEST(Context, BilinearitySpotCheck) {
  const auto& ctx = PairingContext::get();
  DeterministicRandom rng(2);
  for (int i = 0; i < 100; ++i) {
    Scalar a = rng.scalar();
    Scalar b = rng.scalar();
    ASSERT_EQ(pairing(ctx.g() * a, ctx.g2() * b), ctx.gt().pow(a * b));
  }
}

TEST(Pedersen, DegenerateOpenings) {
  const auto& ctx = PairingContext::get();
  EXPECT_TRUE(pedersen_commit(Scalar::zero(), Scalar::zero()).is_identity());
  Scalar m = Scalar::from_u64(12345);
  EXPECT_EQ(pedersen_commit(m, Scalar::zero()), ctx.g() * m);
}

TEST(Pedersen, Homomorphic) {
  DeterministicRandom rng(3);
  for (int i = 0; i < 50; ++i) {
    Scalar m1 = rng.scalar(), r1 = rng.scalar(), m2 = rng.scalar(), r2 = rng.scalar();
    ASSERT_EQ(pedersen_commit(m1, r1) + pedersen_commit(m2, r2),
              pedersen_commit(m1 + m2, r1 + r2));
  }
}

TEST(SetSignature, CompletenessAndTampering) {
  const auto& ctx = PairingContext::get();
  DeterministicRandom rng(4);
  for (int i = 0; i < 20; ++i) {
    Scalar x = rng.scalar();
    Scalar e = rng.scalar();
    G2 y = ctx.g2() * x;
    auto s = set_sign(x, e);
    ASSERT_TRUE(set_verify(y, e, s.sig));
    // Direct recomputation of both sides.
    ASSERT_EQ(pairing(s.sig, y + ctx.g2() * e), ctx.gt());
    ASSERT_FALSE(set_verify(y, e, s.sig + ctx.g()));
    ASSERT_FALSE(set_verify(y, e + Scalar::one(), s.sig));
    ASSERT_FALSE(set_verify(y, e, G1::identity()));
  }
}

TEST(SetSignature, DegenerateElement) {
  Scalar i = Scalar::from_u64(77);
  try {
    set_sign(-i, i);
    FAIL() << "expected DegenerateElement";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::kDegenerateElement);
  }
}

TEST(Attestation, RoundTripAndBaseBinding) {
  const auto& ctx = PairingContext::get();
  DeterministicRandom rng(5);
  Scalar iota = rng.scalar();
  Bytes msg{1, 2, 3, 4};
  auto sig = att_sign(iota, ctx.h(), msg, rng);
  EXPECT_TRUE(att_verify(ctx.h() * iota, ctx.h(), msg, sig));
  EXPECT_FALSE(att_verify(ctx.h() * (iota + Scalar::one()), ctx.h(), msg, sig));
  EXPECT_FALSE(att_verify(ctx.h() * iota, ctx.g(), msg, sig));
  EXPECT_EQ(*decode_attestation(encode(sig)), sig);
}

TEST(Attestation, RejectsEverySingleBitFlip) {
  const auto& ctx = PairingContext::get();
  DeterministicRandom rng(6);
  for (int trial = 0; trial < 10; ++trial) {
    KeyPair key = KeyPair::generate(rng);
    Bytes msg(1 + rng.below(24));
    rng.fill(msg);
    auto sig = att_sign(key.secret, ctx.g(), msg, rng);
    ASSERT_TRUE(att_verify(key.pub, ctx.g(), msg, sig));
    for (std::size_t bit = 0; bit < msg.size() * 8; ++bit) {
      Bytes m = msg;
      m[bit / 8] ^= static_cast<std::uint8_t>(1u << (bit % 8));
      ASSERT_FALSE(att_verify(key.pub, ctx.g(), m, sig));
    }
  }
}

TEST(Certificate, IssuedAndChecked) {
  DeterministicRandom rng(7);
  KeyPair ra = KeyPair::generate(rng);
  KeyPair driver = KeyPair::generate(rng);
  auto cert = issue_certificate(ra, "driver-1", driver.pub, rng);
  EXPECT_TRUE(verify_certificate(ra.pub, cert));
  auto forged = cert;
  forged.identity = "driver-2";
  EXPECT_FALSE(verify_certificate(ra.pub, forged));
  EXPECT_FALSE(verify_certificate(driver.pub, cert));
}

TEST(OfferEncryption, RoundTripRandomizedAndKeyBound) {
  DeterministicRandom rng(8);
  KeyPair rider = KeyPair::generate(rng);
  KeyPair other = KeyPair::generate(rng);
  Bytes msg = from_hex("7b2270223a317d");
  Bytes c1 = offer_encrypt(rider.pub, msg, rng);
  Bytes c2 = offer_encrypt(rider.pub, msg, rng);
  EXPECT_NE(c1, c2);
  EXPECT_EQ(offer_decrypt(rider, c1), msg);
  EXPECT_EQ(offer_decrypt(rider, c2), msg);
  try {
    offer_decrypt(other, c1);
    FAIL() << "expected DecryptionFailure";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::kDecryptionFailure);
  }
  Bytes truncated(c1.begin(), c1.begin() + 10);
  EXPECT_THROW(offer_decrypt(rider, truncated), Error);
  c1.back() ^= 1;
  EXPECT_THROW(offer_decrypt(rider, c1), Error);
}

TEST(Random, DeterministicStreamsRepeatAndForksDiffer) {
  DeterministicRandom a(42), b(42);
  EXPECT_EQ(a.next_u64(), b.next_u64());
  EXPECT_EQ(a.scalar(), b.scalar());
  auto fa = a.fork("x");
  auto fb = a.fork("y");
  EXPECT_NE(fa.next_u64(), fb.next_u64());
  for (int i = 0; i < 1000; ++i) {
    double u = a.uniform();
    ASSERT_GE(u, 0.0);
    ASSERT_LT(u, 1.0);
    ASSERT_LT(a.below(7), 7u);
  }
}

}  // namespace
}  // namespace ridechain::crypto
