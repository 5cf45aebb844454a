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
#include <cstdint>
#include <span>
#include <string_view>

#include "ridechain/crypto/field.hpp"

namespace ridechain::crypto {

// Source of randomness for keys, nonces and proof blinding.
class RandomSource {
 public:
  virtual ~RandomSource() = default;

  virtual void fill(std::span<std::uint8_t> out) = 0;

  // Uniform over Z_r (64 bytes reduced, negligible bias).
  Fr scalar();
  Fr nonzero_scalar();
  std::uint64_t next_u64();
  // Uniform in [0, bound); bound > 0.
  std::uint64_t below(std::uint64_t bound);
  // Uniform in [0, 1).
  double uniform();
};

// Operating system randomness.
class SystemRandom final : public RandomSource {
 public:
  SystemRandom();
  void fill(std::span<std::uint8_t> out) override;
};

// ChaCha20 keystream under a fixed key. Reproducible across runs.
class DeterministicRandom final : public RandomSource {
 public:
  explicit DeterministicRandom(std::uint64_t seed);
  explicit DeterministicRandom(const std::array<std::uint8_t, 32>& key);

  void fill(std::span<std::uint8_t> out) override;

  // Independent stream keyed by this stream's key and a label.
  DeterministicRandom fork(std::string_view label) const;

 private:
  std::array<std::uint8_t, 32> key_;
  std::array<std::uint8_t, 64> block_{};
  std::size_t used_ = 64;
  std::uint32_t counter_ = 0;
};

}  // namespace ridechain::crypto
