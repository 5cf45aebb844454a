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

#include "ridechain/crypto/random.hpp"

#include <sodium.h>

#include <algorithm>
#include <stdexcept>

#include "ridechain/bytes.hpp"
#include "ridechain/crypto/hash.hpp"

namespace ridechain::crypto {

Fr RandomSource::scalar() {
  std::array<std::uint8_t, 64> wide{};
  fill(wide);
  return Fr::reduce_wide(wide);
}

Fr RandomSource::nonzero_scalar() {
  for (;;) {
    Fr s = scalar();
    if (!s.is_zero()) return s;
  }
}

std::uint64_t RandomSource::next_u64() {
  std::array<std::uint8_t, 8> b{};
  fill(b);
  std::uint64_t v = 0;
  for (auto x : b) v = v << 8 | x;
  return v;
}

std::uint64_t RandomSource::below(std::uint64_t bound) {
  if (bound == 0) throw std::invalid_argument("below(0)");
  const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
  for (;;) {
    std::uint64_t v = next_u64();
    if (v < limit) return v % bound;
  }
}

double RandomSource::uniform() {
  return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

SystemRandom::SystemRandom() { ensure_sodium(); }

void SystemRandom::fill(std::span<std::uint8_t> out) {
  randombytes_buf(out.data(), out.size());
}

DeterministicRandom::DeterministicRandom(std::uint64_t seed) {
  Bytes material;
  material.reserve(96);
  append(material, "ridechain/rng-seed/v1");
  append_u64(material, seed);
  key_ = sha256(material);
}

DeterministicRandom::DeterministicRandom(const std::array<std::uint8_t, 32>& key)
    : key_(key) {}

void DeterministicRandom::fill(std::span<std::uint8_t> out) {
  static const std::array<std::uint8_t, crypto_stream_chacha20_ietf_NONCEBYTES> kNonce{};
  static const std::array<std::uint8_t, 64> kZero{};
  std::size_t pos = 0;
  while (pos < out.size()) {
    if (used_ == block_.size()) {
      if (counter_ == UINT32_MAX) throw std::runtime_error("keystream exhausted");
      crypto_stream_chacha20_ietf_xor_ic(block_.data(), kZero.data(), block_.size(),
                                         kNonce.data(), counter_++, key_.data());
      used_ = 0;
    }
    std::size_t n = std::min(out.size() - pos, block_.size() - used_);
    std::copy_n(block_.begin() + used_, n, out.begin() + pos);
    used_ += n;
    pos += n;
  }
}

DeterministicRandom DeterministicRandom::fork(std::string_view label) const {
  Bytes material;
  material.reserve(96);
  append(material, "ridechain/rng-fork/v1");
  append(material, key_);
  append_field(material, as_bytes(label));
  return DeterministicRandom(sha256(material));
}

}  // namespace ridechain::crypto
