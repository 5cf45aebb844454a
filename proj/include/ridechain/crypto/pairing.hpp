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
#include <utility>
#include <vector>

#include "ridechain/crypto/curve.hpp"

namespace ridechain::crypto {

inline constexpr std::size_t kGtBytes = 384;

// Element of the order-r target group inside Fp12.
class GT {
 public:
  GT() : v_(Fp12::one()) {}
  explicit GT(const Fp12& v) : v_(v) {}

  static GT one() { return GT(); }

  const Fp12& value() const { return v_; }
  bool is_one() const { return v_.is_one(); }

  friend GT operator*(const GT& a, const GT& b) { return GT(a.v_ * b.v_); }
  GT& operator*=(const GT& o) { return *this = *this * o; }

  // Unitary: the inverse is the conjugate.
  GT inverse() const { return GT(v_.conjugate()); }
  GT pow(const Fr& e) const;
  GT square() const { return GT(v_.square()); }

  friend bool operator==(const GT& a, const GT& b) = default;

 private:
  Fp12 v_;
};

// Twelve big-endian base-field coefficients, c0.c0.c0 first.
std::array<std::uint8_t, kGtBytes> encode(const GT& v);
// Rejects non-canonical coefficients and values outside the order-r subgroup.
std::optional<GT> decode_gt(std::span<const std::uint8_t> bytes);

// Line coefficients of the Miller loop for a fixed G2 argument.
class G2Prepared {
 public:
  struct Line {
    Fp2 ell_0;
    Fp2 ell_vw;
    Fp2 ell_vv;
  };

  explicit G2Prepared(const G2& q);

  bool is_identity() const { return identity_; }
  const std::vector<Line>& lines() const { return lines_; }

 private:
  bool identity_ = false;
  std::vector<Line> lines_;
};

Fp12 miller_loop(std::span<const std::pair<G1, const G2Prepared*>> terms);
Fp12 final_exponentiation(const Fp12& f);

GT pairing(const G1& p, const G2& q);
GT pairing(const G1& p, const G2Prepared& q);
// Product of pairings sharing one final exponentiation.
GT multi_pairing(std::span<const std::pair<G1, const G2Prepared*>> terms);

// Prepared form of the fixed G2 generator.
const G2Prepared& g2_generator_prepared();

}  // namespace ridechain::crypto
