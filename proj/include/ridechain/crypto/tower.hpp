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

#include <optional>

#include "ridechain/crypto/field.hpp"

// Tower used by the BN254 pairing:
//   Fp2  = Fp[u]  / (u^2 + 1)
//   Fp6  = Fp2[v] / (v^3 - xi),  xi = 9 + u
//   Fp12 = Fp6[w] / (w^2 - v)
namespace ridechain::crypto {

namespace detail {

constexpr Limbs div_small(const Limbs& a, std::uint64_t d) {
  Limbs q{};
  u128 rem = 0;
  for (int i = 3; i >= 0; --i) {
    u128 cur = (rem << 64) | a[i];
    q[i] = static_cast<std::uint64_t>(cur / d);
    rem = cur % d;
  }
  return q;
}

}  // namespace detail

std::optional<Fp> sqrt(const Fp& a);

struct Fp2 {
  Fp c0;
  Fp c1;

  static Fp2 zero() { return {}; }
  static Fp2 one() { return {Fp::one(), Fp::zero()}; }
  static Fp2 xi() { return {Fp::from_u64(9), Fp::one()}; }

  bool is_zero() const { return c0.is_zero() && c1.is_zero(); }

  friend Fp2 operator+(const Fp2& a, const Fp2& b) { return {a.c0 + b.c0, a.c1 + b.c1}; }
  friend Fp2 operator-(const Fp2& a, const Fp2& b) { return {a.c0 - b.c0, a.c1 - b.c1}; }
  Fp2 operator-() const { return {-c0, -c1}; }

  friend Fp2 operator*(const Fp2& a, const Fp2& b) {
    Fp t0 = a.c0 * b.c0;
    Fp t1 = a.c1 * b.c1;
    Fp cross = (a.c0 + a.c1) * (b.c0 + b.c1);
    return {t0 - t1, cross - t0 - t1};
  }

  Fp2 operator*(const Fp& s) const { return {c0 * s, c1 * s}; }

  Fp2& operator+=(const Fp2& o) { return *this = *this + o; }
  Fp2& operator-=(const Fp2& o) { return *this = *this - o; }
  Fp2& operator*=(const Fp2& o) { return *this = *this * o; }

  Fp2 square() const {
    Fp t = c0 * c1;
    return {(c0 + c1) * (c0 - c1), t + t};
  }

  Fp2 dbl() const { return {c0.dbl(), c1.dbl()}; }

  Fp2 conjugate() const { return {c0, -c1}; }

  // Multiplication by xi = 9 + u.
  Fp2 mul_by_xi() const {
    Fp nine_c0 = c0.dbl().dbl().dbl() + c0;
    Fp nine_c1 = c1.dbl().dbl().dbl() + c1;
    return {nine_c0 - c1, c0 + nine_c1};
  }

  Fp2 inverse() const {
    Fp norm_inv = (c0.square() + c1.square()).inverse();
    return {c0 * norm_inv, -(c1 * norm_inv)};
  }

  Fp2 pow(std::span<const std::uint64_t> e) const { return pow_limbs(*this, e); }

  // Sign convention for point compression: the imaginary part decides unless
  // it is zero.
  bool is_odd_half() const { return c1.is_zero() ? c0.is_odd_half() : c1.is_odd_half(); }

  friend bool operator==(const Fp2& a, const Fp2& b) = default;
};

std::optional<Fp2> sqrt(const Fp2& a);

struct Fp6 {
  Fp2 c0;
  Fp2 c1;
  Fp2 c2;

  static Fp6 zero() { return {}; }
  static Fp6 one() { return {Fp2::one(), Fp2::zero(), Fp2::zero()}; }

  bool is_zero() const { return c0.is_zero() && c1.is_zero() && c2.is_zero(); }

  friend Fp6 operator+(const Fp6& a, const Fp6& b) {
    return {a.c0 + b.c0, a.c1 + b.c1, a.c2 + b.c2};
  }
  friend Fp6 operator-(const Fp6& a, const Fp6& b) {
    return {a.c0 - b.c0, a.c1 - b.c1, a.c2 - b.c2};
  }
  Fp6 operator-() const { return {-c0, -c1, -c2}; }

  friend Fp6 operator*(const Fp6& a, const Fp6& b) {
    Fp2 t0 = a.c0 * b.c0;
    Fp2 t1 = a.c1 * b.c1;
    Fp2 t2 = a.c2 * b.c2;
    Fp2 r0 = ((a.c1 + a.c2) * (b.c1 + b.c2) - t1 - t2).mul_by_xi() + t0;
    Fp2 r1 = (a.c0 + a.c1) * (b.c0 + b.c1) - t0 - t1 + t2.mul_by_xi();
    Fp2 r2 = (a.c0 + a.c2) * (b.c0 + b.c2) - t0 - t2 + t1;
    return {r0, r1, r2};
  }

  Fp6 operator*(const Fp2& s) const { return {c0 * s, c1 * s, c2 * s}; }

  Fp6 square() const { return *this * *this; }

  // Multiplication by v.
  Fp6 mul_by_v() const { return {c2.mul_by_xi(), c0, c1}; }

  Fp6 inverse() const {
    Fp2 a = c0.square() - (c1 * c2).mul_by_xi();
    Fp2 b = c2.square().mul_by_xi() - c0 * c1;
    Fp2 c = c1.square() - c0 * c2;
    Fp2 f = c0 * a + ((c2 * b) + (c1 * c)).mul_by_xi();
    Fp2 f_inv = f.inverse();
    return {a * f_inv, b * f_inv, c * f_inv};
  }

  Fp6 frobenius() const;

  friend bool operator==(const Fp6& a, const Fp6& b) = default;
};

struct Fp12 {
  Fp6 c0;
  Fp6 c1;

  static Fp12 zero() { return {}; }
  static Fp12 one() { return {Fp6::one(), Fp6::zero()}; }

  bool is_one() const { return *this == one(); }

  friend Fp12 operator*(const Fp12& a, const Fp12& b) {
    Fp6 t0 = a.c0 * b.c0;
    Fp6 t1 = a.c1 * b.c1;
    return {t0 + t1.mul_by_v(), (a.c0 + a.c1) * (b.c0 + b.c1) - t0 - t1};
  }

  Fp12& operator*=(const Fp12& o) { return *this = *this * o; }

  Fp12 square() const {
    Fp6 ab = c0 * c1;
    Fp6 t = (c0 + c1) * (c0 + c1.mul_by_v());
    return {t - ab - ab.mul_by_v(), ab + ab};
  }

  Fp12 conjugate() const { return {c0, -c1}; }

  Fp12 inverse() const {
    Fp6 t = (c0.square() - c1.square().mul_by_v()).inverse();
    return {c0 * t, -(c1 * t)};
  }

  // Product with the sparse element (ell_0 + ell_vv v^2) + (ell_vw v) w that
  // line functions evaluate to.
  Fp12 mul_by_024(const Fp2& ell_0, const Fp2& ell_vw, const Fp2& ell_vv) const;

  Fp12 frobenius() const;
  Fp12 frobenius(int power) const {
    Fp12 r = *this;
    for (int i = 0; i < power; ++i) r = r.frobenius();
    return r;
  }

  Fp12 pow(std::span<const std::uint64_t> e) const { return pow_limbs(*this, e); }

  friend bool operator==(const Fp12& a, const Fp12& b) = default;
};

// xi^((p-1)/3) and xi^((p-1)/2), the Frobenius twisting constants for G2.
const Fp2& frobenius_gamma_x();
const Fp2& frobenius_gamma_y();

}  // namespace ridechain::crypto
