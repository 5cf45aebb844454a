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

#include "ridechain/crypto/schemes.hpp"

#include <sodium.h>

#include <algorithm>

#include "ridechain/crypto/hash.hpp"
#include "ridechain/error.hpp"

namespace ridechain::crypto {
namespace {

constexpr std::string_view kAttestationTag = "ridechain/schnorr/v1";
constexpr std::string_view kCertificateTag = "ridechain/certificate/v1";
constexpr std::string_view kOfferKeyTag = "ridechain/offer-key/v1";

Scalar schnorr_challenge(const G1& base, const G1& pub, const G1& commitment,
                         ByteView message) {
  Bytes buf;
  append(buf, kAttestationTag);
  append(buf, encode(base));
  append(buf, encode(pub));
  append(buf, encode(commitment));
  append(buf, message);
  return hash_to_scalar(buf);
}

Bytes certificate_message(std::string_view identity, const G1& subject) {
  Bytes buf;
  append(buf, kCertificateTag);
  append_field(buf, as_bytes(identity));
  append(buf, encode(subject));
  return buf;
}

std::array<std::uint8_t, crypto_aead_chacha20poly1305_ietf_KEYBYTES> offer_key(
    const G1& ephemeral, const G1& pk, const G1& shared) {
  Bytes buf;
  append(buf, kOfferKeyTag);
  append(buf, encode(ephemeral));
  append(buf, encode(pk));
  append(buf, encode(shared));
  return sha256(buf);
}

}  // namespace

std::array<std::uint8_t, 32> encode(const Scalar& s) { return s.to_bytes(); }

std::optional<Scalar> decode_scalar(ByteView bytes) {
  if (bytes.size() != 32) return std::nullopt;
  return Scalar::from_bytes(std::span<const std::uint8_t, 32>(bytes.data(), 32));
}

PairingContext::PairingContext()
    : g_(G1::generator()),
      g2_(G2::generator()),
      h_(hash_to_g1(kPedersenTag)),
      gt_(pairing(g_, g2_generator_prepared())) {}

const PairingContext& PairingContext::get() {
  static const PairingContext ctx;
  return ctx;
}

G1 hash_to_g1(std::string_view tag) {
  for (std::uint64_t counter = 0;; ++counter) {
    Bytes buf;
    append_field(buf, as_bytes(tag));
    append_u64(buf, counter);
    auto digest = sha512(buf);
    Fp x = Fp::reduce_wide(digest);
    auto y = sqrt(x.square() * x + G1Traits::b());
    if (!y) continue;
    Fp yy = y->is_odd_half() ? -*y : *y;
    // The G1 cofactor is 1, so any curve point generates the group.
    G1 p = G1::from_affine(x, yy);
    if (!p.is_identity()) return p;
  }
}

G1 pedersen_commit(const Scalar& m, const Scalar& r) {
  const auto& ctx = PairingContext::get();
  return ctx.g() * m + ctx.h() * r;
}

SetSignature set_sign(const Scalar& x, const Scalar& element) {
  Scalar denom = x + element;
  RIDECHAIN_ENFORCE(!denom.is_zero(), Errc::kDegenerateElement, "x + element = 0 mod r");
  return {element, PairingContext::get().g() * denom.inverse()};
}

bool set_verify(const G2& y, const Scalar& element, const G1& sig) {
  const auto& ctx = PairingContext::get();
  if (sig.is_identity()) return false;
  G2Prepared key(y + ctx.g2() * element);
  if (key.is_identity()) return false;
  // e(sig, y g2^element) * e(-g, g2) == 1
  const std::array terms{std::pair<G1, const G2Prepared*>{sig, &key},
                         std::pair<G1, const G2Prepared*>{-ctx.g(), &ctx.g2_prepared()}};
  return multi_pairing(terms).is_one();
}

std::array<std::uint8_t, kAttestationBytes> encode(const AttestationSignature& sig) {
  std::array<std::uint8_t, kAttestationBytes> out{};
  auto e = sig.e.to_bytes();
  auto s = sig.s.to_bytes();
  std::copy(e.begin(), e.end(), out.begin());
  std::copy(s.begin(), s.end(), out.begin() + 32);
  return out;
}

std::optional<AttestationSignature> decode_attestation(ByteView bytes) {
  if (bytes.size() != kAttestationBytes) return std::nullopt;
  auto e = decode_scalar(bytes.subspan(0, 32));
  auto s = decode_scalar(bytes.subspan(32, 32));
  if (!e || !s) return std::nullopt;
  return AttestationSignature{*e, *s};
}

AttestationSignature att_sign(const Scalar& secret, const G1& base, ByteView message,
                              RandomSource& rng) {
  const Scalar k = rng.nonzero_scalar();
  const G1 pub = base * secret;
  const Scalar e = schnorr_challenge(base, pub, base * k, message);
  return {e, k + e * secret};
}

bool att_verify(const G1& pub, const G1& base, ByteView message,
                const AttestationSignature& sig) {
  if (base.is_identity() || pub.is_identity()) return false;
  const G1 commitment = base * sig.s - pub * sig.e;
  return schnorr_challenge(base, pub, commitment, message) == sig.e;
}

KeyPair KeyPair::generate(RandomSource& rng) { return from_secret(rng.nonzero_scalar()); }

KeyPair KeyPair::from_secret(const Scalar& secret) {
  return {secret, PairingContext::get().g() * secret};
}

AttestationSignature sign(const KeyPair& key, ByteView message, RandomSource& rng) {
  return att_sign(key.secret, PairingContext::get().g(), message, rng);
}

bool verify(const G1& pub, ByteView message, const AttestationSignature& sig) {
  return att_verify(pub, PairingContext::get().g(), message, sig);
}

Certificate issue_certificate(const KeyPair& authority, std::string identity,
                              const G1& subject, RandomSource& rng) {
  auto sig = sign(authority, certificate_message(identity, subject), rng);
  return {std::move(identity), subject, sig};
}

bool verify_certificate(const G1& authority, const Certificate& cert) {
  return verify(authority, certificate_message(cert.identity, cert.subject), cert.sig);
}

Bytes offer_encrypt(const G1& pk, ByteView plaintext, RandomSource& rng) {
  ensure_sodium();
  RIDECHAIN_ENFORCE(!pk.is_identity(), Errc::kInvalidArgument, "identity public key");
  const Scalar k = rng.nonzero_scalar();
  const G1 ephemeral = PairingContext::get().g() * k;
  const auto key = offer_key(ephemeral, pk, pk * k);
  const auto eph_bytes = encode(ephemeral);

  std::array<std::uint8_t, crypto_aead_chacha20poly1305_ietf_NPUBBYTES> nonce{};
  rng.fill(nonce);

  Bytes out;
  append(out, eph_bytes);
  append(out, nonce);
  const std::size_t header = out.size();
  out.resize(header + plaintext.size() + crypto_aead_chacha20poly1305_ietf_ABYTES);
  unsigned long long written = 0;
  crypto_aead_chacha20poly1305_ietf_encrypt(out.data() + header, &written, plaintext.data(),
                                            plaintext.size(), eph_bytes.data(),
                                            eph_bytes.size(), nullptr, nonce.data(),
                                            key.data());
  out.resize(header + written);
  return out;
}

Bytes offer_decrypt(const KeyPair& key, ByteView ciphertext) {
  ensure_sodium();
  constexpr std::size_t kNonce = crypto_aead_chacha20poly1305_ietf_NPUBBYTES;
  constexpr std::size_t kHeader = kG1Bytes + kNonce;
  RIDECHAIN_ENFORCE(ciphertext.size() >= kHeader + crypto_aead_chacha20poly1305_ietf_ABYTES,
                    Errc::kDecryptionFailure, "ciphertext too short");
  auto ephemeral = decode_g1(ciphertext.subspan(0, kG1Bytes));
  RIDECHAIN_ENFORCE(ephemeral && !ephemeral->is_identity(), Errc::kDecryptionFailure,
                    "bad ephemeral point");
  const auto sym = offer_key(*ephemeral, key.pub, *ephemeral * key.secret);
  const auto body = ciphertext.subspan(kHeader);
  Bytes plain(body.size());
  unsigned long long written = 0;
  int rc = crypto_aead_chacha20poly1305_ietf_decrypt(
      plain.data(), &written, nullptr, body.data(), body.size(), ciphertext.data(), kG1Bytes,
      ciphertext.data() + kG1Bytes, sym.data());
  RIDECHAIN_ENFORCE(rc == 0, Errc::kDecryptionFailure, "authentication failed");
  plain.resize(written);
  return plain;
}

}  // namespace ridechain::crypto
