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
#include <span>
#include <string>
#include <vector>

#include "ridechain/bytes.hpp"
#include "ridechain/crypto/schemes.hpp"
#include "ridechain/geo.hpp"

namespace ridechain::zksm {

using crypto::AttestationSignature;
using crypto::G1;
using crypto::G2;
using crypto::GT;
using crypto::KeyPair;
using crypto::RandomSource;
using crypto::Scalar;

// Published by the rider: the set, y = g2^x and one signature per element.
// The secret x is not kept.
struct ZkSetup {
  std::vector<Scalar> set;
  G2 y;
  std::vector<G1> signatures;

  std::size_t k() const { return set.size(); }
};

ZkSetup setup(std::span<const Scalar> elements, RandomSource& rng);
bool audit(const ZkSetup& s);

// C || element || signature by iota under base h, sent to the location prover.
struct AttRequest {
  G1 commitment;
  Scalar element;
  AttestationSignature sig;
};

struct LocationCommitment {
  G1 commitment;
  Scalar iota;
  AttRequest request;
};

LocationCommitment commit_location(const Scalar& element, RandomSource& rng);

struct LocationProver {
  std::string identity;
  KeyPair key;
  Coverage coverage;
};

struct LPAttestation {
  G1 commitment;
  AttestationSignature sig;
};

// Throws Error(kSignatureMismatch) or Error(kOutOfCoverage).
LPAttestation lp_attest(const LocationProver& lp, const AttRequest& request,
                        const GeoPoint& claimed_position, RandomSource& rng);
bool verify_lp_attestation(const G1& lp_pub, const LPAttestation& att);

struct MembershipProof {
  G1 C;
  G1 V;
  Scalar c;
  GT a;
  G1 Q;
  Scalar z_l;
  Scalar z_v;
  Scalar z_i;

  friend bool operator==(const MembershipProof&, const MembershipProof&) = default;
};

inline constexpr std::size_t kProofBytes =
    3 * crypto::kG1Bytes + 4 * 32 + crypto::kGtBytes;

Scalar challenge(const G1& V, const GT& a, const G1& Q);

// Throws Error(kElementNotInSet).
MembershipProof prove(const ZkSetup& s, const Scalar& element, const Scalar& iota,
                      const G1& C, RandomSource& rng);
bool verify(const G2& y, const MembershipProof& proof);
bool verify(const crypto::G2Prepared& y, const MembershipProof& proof);

// Field order C, V, c, a, Q, z_l, z_v, z_i.
Bytes encode(const MembershipProof& proof);
std::optional<MembershipProof> decode_proof(ByteView bytes);

}  // namespace ridechain::zksm
