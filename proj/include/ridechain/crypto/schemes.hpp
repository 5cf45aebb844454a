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
#include <optional>
#include <string>

#include "ridechain/bytes.hpp"
#include "ridechain/crypto/hash.hpp"
#include "ridechain/crypto/pairing.hpp"
#include "ridechain/crypto/random.hpp"

namespace ridechain::crypto {

using Scalar = Fr;

std::array<std::uint8_t, 32> encode(const Scalar& s);
// Rejects values >= r.
std::optional<Scalar> decode_scalar(ByteView bytes);

// Public parameters shared by every scheme: the group order r, generators
// g (G1) and g2 (G2), a second G1 generator h with unknown log_g(h), and the
// cached value e(g, g2).
class PairingContext {
 public:
  static const PairingContext& get();

  const G1& g() const { return g_; }
  const G2& g2() const { return g2_; }
  const G1& h() const { return h_; }
  const GT& gt() const { return gt_; }
  const G2Prepared& g2_prepared() const { return g2_generator_prepared(); }
  static const Limbs& order() { return Fr::kModulus; }

 private:
  PairingContext();

  G1 g_;
  G2 g2_;
  G1 h_;
  GT gt_;
};

// Try-and-increment map of tag || counter onto G1.
G1 hash_to_g1(std::string_view tag);

inline constexpr std::string_view kPedersenTag = "ridechain/pedersen-h/v1";

G1 pedersen_commit(const Scalar& m, const Scalar& r);

// Short signature on a set element: sig = g^(1/(x + element)).
struct SetSignature {
  Scalar element;
  G1 sig;
};

SetSignature set_sign(const Scalar& x, const Scalar& element);
// e(sig, y * g2^element) == e(g, g2)
bool set_verify(const G2& y, const Scalar& element, const G1& sig);

// Schnorr signature relative to an explicit base: pub = base^secret.
struct AttestationSignature {
  Scalar e;
  Scalar s;

  friend bool operator==(const AttestationSignature&, const AttestationSignature&) = default;
};

inline constexpr std::size_t kAttestationBytes = 64;

std::array<std::uint8_t, kAttestationBytes> encode(const AttestationSignature& sig);
std::optional<AttestationSignature> decode_attestation(ByteView bytes);

AttestationSignature att_sign(const Scalar& secret, const G1& base, ByteView message,
                              RandomSource& rng);
bool att_verify(const G1& pub, const G1& base, ByteView message,
                const AttestationSignature& sig);

struct KeyPair {
  Scalar secret;
  G1 pub;

  static KeyPair generate(RandomSource& rng);
  static KeyPair from_secret(const Scalar& secret);
};

// Signatures under base g; used for transactions, certificates and challenges.
AttestationSignature sign(const KeyPair& key, ByteView message, RandomSource& rng);
bool verify(const G1& pub, ByteView message, const AttestationSignature& sig);

// Binds a driver identity to a public key under the registration authority key.
struct Certificate {
  std::string identity;
  G1 subject;
  AttestationSignature sig;
};

Certificate issue_certificate(const KeyPair& authority, std::string identity,
                              const G1& subject, RandomSource& rng);
bool verify_certificate(const G1& authority, const Certificate& cert);

// Hybrid encryption: ephemeral key agreement on G1 plus ChaCha20-Poly1305.
// Ciphertext layout: ephemeral point (32) || nonce (12) || sealed payload.
Bytes offer_encrypt(const G1& pk, ByteView plaintext, RandomSource& rng);
// Throws Error(kDecryptionFailure).
Bytes offer_decrypt(const KeyPair& key, ByteView ciphertext);

}  // namespace ridechain::crypto
