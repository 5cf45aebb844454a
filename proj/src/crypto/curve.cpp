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

#include "ridechain/crypto/curve.hpp"

#include <algorithm>

namespace ridechain::crypto {
namespace {

Fp fp_from_hex(const char* hex) {
  Limbs l{};
  std::size_t len = std::char_traits<char>::length(hex);
  for (std::size_t i = 0; i < len; ++i) {
    char ch = hex[len - 1 - i];
    std::uint64_t nibble = (ch >= 'a') ? ch - 'a' + 10 : ch - '0';
    l[i / 16] |= nibble << (4 * (i % 16));
  }
  return *Fp::from_canonical(l);
}

constexpr std::uint8_t kIdentityFlag = 0x80;
constexpr std::uint8_t kSignFlag = 0x40;

}  // namespace

Fp G1Traits::b() { return Fp::from_u64(3); }

G1 G1Traits::generator() { return G1::from_affine(Fp::from_u64(1), Fp::from_u64(2)); }

Fp2 G2Traits::b() {
  static const Fp2 b = Fp2{Fp::from_u64(3), Fp::zero()} * Fp2::xi().inverse();
  return b;
}

G2 G2Traits::generator() {
  static const G2 g = G2::from_affine(
      Fp2{fp_from_hex("1800deef121f1e76426a00665e5c4479674322d4f75edadd46debd5cd992f6ed"),
          fp_from_hex("198e9393920d483a7260bfb731fb5d25f1aa493335a9e71297e485b7aef312c2")},
      Fp2{fp_from_hex("12c85ea5db8c6deb4aab71808dcb408fe3d1e7690c43d37b4ce6cc0166fa7daa"),
          fp_from_hex("090689d0585ff075ec9e99ad690c3395bc4b313370b38ef355acdadcd122975b")});
  return g;
}

std::array<std::uint8_t, kG1Bytes> encode(const G1& p) {
  std::array<std::uint8_t, kG1Bytes> out{};
  if (p.is_identity()) {
    out[0] = kIdentityFlag;
    return out;
  }
  auto [x, y] = p.to_affine();
  out = x.to_bytes();
  if (y.is_odd_half()) out[0] |= kSignFlag;
  return out;
}

std::array<std::uint8_t, kG2Bytes> encode(const G2& p) {
  std::array<std::uint8_t, kG2Bytes> out{};
  if (p.is_identity()) {
    out[0] = kIdentityFlag;
    return out;
  }
  auto [x, y] = p.to_affine();
  auto hi = x.c1.to_bytes();
  auto lo = x.c0.to_bytes();
  std::copy(hi.begin(), hi.end(), out.begin());
  std::copy(lo.begin(), lo.end(), out.begin() + 32);
  if (y.is_odd_half()) out[0] |= kSignFlag;
  return out;
}

std::optional<G1> decode_g1(std::span<const std::uint8_t> bytes) {
  if (bytes.size() != kG1Bytes) return std::nullopt;
  std::array<std::uint8_t, 32> buf{};
  std::copy(bytes.begin(), bytes.end(), buf.begin());
  const std::uint8_t flags = buf[0] & (kIdentityFlag | kSignFlag);
  buf[0] &= static_cast<std::uint8_t>(~(kIdentityFlag | kSignFlag));
  if (flags & kIdentityFlag) {
    if (flags != kIdentityFlag) return std::nullopt;
    if (std::any_of(buf.begin(), buf.end(), [](std::uint8_t b) { return b != 0; })) {
      return std::nullopt;
    }
    return G1::identity();
  }
  auto x = Fp::from_bytes(std::span<const std::uint8_t, 32>(buf));
  if (!x) return std::nullopt;
  auto y = sqrt(x->square() * *x + G1Traits::b());
  if (!y) return std::nullopt;
  if (y->is_odd_half() != static_cast<bool>(flags & kSignFlag)) *y = -*y;
  return G1::from_affine(*x, *y);
}

std::optional<G2> decode_g2(std::span<const std::uint8_t> bytes) {
  if (bytes.size() != kG2Bytes) return std::nullopt;
  std::array<std::uint8_t, 64> buf{};
  std::copy(bytes.begin(), bytes.end(), buf.begin());
  const std::uint8_t flags = buf[0] & (kIdentityFlag | kSignFlag);
  buf[0] &= static_cast<std::uint8_t>(~(kIdentityFlag | kSignFlag));
  if (flags & kIdentityFlag) {
    if (flags != kIdentityFlag) return std::nullopt;
    if (std::any_of(buf.begin(), buf.end(), [](std::uint8_t b) { return b != 0; })) {
      return std::nullopt;
    }
    return G2::identity();
  }
  auto c1 = Fp::from_bytes(std::span<const std::uint8_t, 32>(buf.data(), 32));
  auto c0 = Fp::from_bytes(std::span<const std::uint8_t, 32>(buf.data() + 32, 32));
  if (!c0 || !c1) return std::nullopt;
  Fp2 x{*c0, *c1};
  auto y = sqrt(x.square() * x + G2Traits::b());
  if (!y) return std::nullopt;
  if (y->is_odd_half() != static_cast<bool>(flags & kSignFlag)) *y = -*y;
  G2 p = G2::from_affine(x, *y);
  if (!in_prime_subgroup(p)) return std::nullopt;
  return p;
}

bool in_prime_subgroup(const G2& p) {
  return p.is_on_curve() && p.mul(std::span<const std::uint64_t>(Fr::kModulus)).is_identity();
}

}  // namespace ridechain::crypto
