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

#include "ridechain/zksm.hpp"

#include <algorithm>

#include "ridechain/error.hpp"

namespace ridechain::zksm {

using crypto::PairingContext;

ZkSetup setup(std::span<const Scalar> elements, RandomSource& rng) {
  RIDECHAIN_ENFORCE(elements.size() >= 2, Errc::kSetTooSmall, "set needs k >= 2");
  for (std::size_t i = 0; i < elements.size(); ++i) {
    for (std::size_t j = i + 1; j < elements.size(); ++j) {
      RIDECHAIN_ENFORCE(elements[i] != elements[j], Errc::kDuplicateElement,
                        "set elements must be distinct");
    }
  }
  const auto& ctx = PairingContext::get();
  for (;;) {
    const Scalar x = rng.nonzero_scalar();
    ZkSetup out;
    out.set.assign(elements.begin(), elements.end());
    out.signatures.reserve(elements.size());
    try {
      for (const auto& e : elements) out.signatures.push_back(crypto::set_sign(x, e).sig);
    } catch (const Error& err) {
      if (err.code() == Errc::kDegenerateElement) continue;
      throw;
    }
    out.y = ctx.g2() * x;
    return out;
  }
}

bool audit(const ZkSetup& s) {
  if (s.set.size() < 2 || s.set.size() != s.signatures.size()) return false;
  for (std::size_t i = 0; i < s.set.size(); ++i) {
    if (!crypto::set_verify(s.y, s.set[i], s.signatures[i])) return false;
  }
  return true;
}

LocationCommitment commit_location(const Scalar& element, RandomSource& rng) {
  const auto& ctx = PairingContext::get();
  const Scalar iota = rng.nonzero_scalar();
  const G1 C = crypto::pedersen_commit(element, iota);
  const auto sig = crypto::att_sign(iota, ctx.h(), crypto::encode(element), rng);
  return {C, iota, {C, element, sig}};
}

LPAttestation lp_attest(const LocationProver& lp, const AttRequest& request,
                        const GeoPoint& claimed_position, RandomSource& rng) {
  const auto& ctx = PairingContext::get();
  // C g^-l = h^iota when C commits to l.
  const G1 shifted = request.commitment - ctx.g() * request.element;
  RIDECHAIN_ENFORCE(
      crypto::att_verify(shifted, ctx.h(), crypto::encode(request.element), request.sig),
      Errc::kSignatureMismatch, "commitment does not open to the claimed location");
  RIDECHAIN_ENFORCE(lp.coverage.contains(claimed_position), Errc::kOutOfCoverage,
                    "position outside coverage of " + lp.identity);
  const auto c_bytes = crypto::encode(request.commitment);
  return {request.commitment, crypto::sign(lp.key, c_bytes, rng)};
}

bool verify_lp_attestation(const G1& lp_pub, const LPAttestation& att) {
  return crypto::verify(lp_pub, crypto::encode(att.commitment), att.sig);
}

Scalar challenge(const G1& V, const GT& a, const G1& Q) {
  Bytes buf;
  append(buf, crypto::encode(V));
  append(buf, crypto::encode(a));
  append(buf, crypto::encode(Q));
  return crypto::hash_to_scalar(buf);
}

MembershipProof prove(const ZkSetup& s, const Scalar& element, const Scalar& iota,
                      const G1& C, RandomSource& rng) {
  const auto it = std::find(s.set.begin(), s.set.end(), element);
  RIDECHAIN_ENFORCE(it != s.set.end() && s.signatures.size() == s.set.size(),
                    Errc::kElementNotInSet, "no set signature for element");
  const G1& A = s.signatures[static_cast<std::size_t>(it - s.set.begin())];
  const auto& ctx = PairingContext::get();

  const Scalar v = rng.nonzero_scalar();
  const Scalar sr = rng.scalar();
  const Scalar t = rng.scalar();
  const Scalar m = rng.scalar();

  MembershipProof p;
  p.C = C;
  p.V = A * v;
  // e(V, g2)^-s e(g, g2)^t as a single pairing.
  p.a = crypto::pairing(ctx.g() * t - p.V * sr, ctx.g2_prepared());
  p.Q = ctx.g() * sr + ctx.h() * m;
  p.c = challenge(p.V, p.a, p.Q);
  p.z_l = sr - element * p.c;
  p.z_v = t - v * p.c;
  p.z_i = m - iota * p.c;
  return p;
}

bool verify(const crypto::G2Prepared& y, const MembershipProof& p) {
  const auto& ctx = PairingContext::get();
  if (p.V.is_identity() || y.is_identity()) return false;
  if (challenge(p.V, p.a, p.Q) != p.c) return false;
  if (p.Q != p.C * p.c + ctx.h() * p.z_i + ctx.g() * p.z_l) return false;
  // e(V, y)^c e(V, g2)^-z_l e(g, g2)^z_v
  const std::array terms{
      std::pair<G1, const crypto::G2Prepared*>{p.V * p.c, &y},
      std::pair<G1, const crypto::G2Prepared*>{ctx.g() * p.z_v - p.V * p.z_l,
                                               &ctx.g2_prepared()}};
  return crypto::multi_pairing(terms) == p.a;
}

bool verify(const G2& y, const MembershipProof& p) {
  return verify(crypto::G2Prepared(y), p);
}

Bytes encode(const MembershipProof& p) {
  Bytes out;
  out.reserve(kProofBytes);
  append(out, crypto::encode(p.C));
  append(out, crypto::encode(p.V));
  append(out, crypto::encode(p.c));
  append(out, crypto::encode(p.a));
  append(out, crypto::encode(p.Q));
  append(out, crypto::encode(p.z_l));
  append(out, crypto::encode(p.z_v));
  append(out, crypto::encode(p.z_i));
  return out;
}

std::optional<MembershipProof> decode_proof(ByteView b) {
  if (b.size() != kProofBytes) return std::nullopt;
  std::size_t off = 0;
  auto take = [&](std::size_t n) {
    auto s = b.subspan(off, n);
    off += n;
    return s;
  };
  auto C = crypto::decode_g1(take(crypto::kG1Bytes));
  auto V = crypto::decode_g1(take(crypto::kG1Bytes));
  auto c = crypto::decode_scalar(take(32));
  auto a = crypto::decode_gt(take(crypto::kGtBytes));
  auto Q = crypto::decode_g1(take(crypto::kG1Bytes));
  auto zl = crypto::decode_scalar(take(32));
  auto zv = crypto::decode_scalar(take(32));
  auto zi = crypto::decode_scalar(take(32));
  if (!C || !V || !c || !a || !Q || !zl || !zv || !zi) return std::nullopt;
  return MembershipProof{*C, *V, *c, *a, *Q, *zl, *zv, *zi};
}

}  // namespace ridechain::zksm
