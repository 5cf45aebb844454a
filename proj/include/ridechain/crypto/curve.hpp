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

#include "ridechain/crypto/tower.hpp"

namespace ridechain::crypto {

// Point on y^2 = x^3 + b in Jacobian coordinates (x = X/Z^2, y = Y/Z^3).
// The identity has Z = 0.
template <class F, class Traits>
class JacobianPoint {
 public:
  using Field = F;

  JacobianPoint() : x_(F::one()), y_(F::one()), z_(F::zero()) {}

  static JacobianPoint identity() { return {}; }
  static JacobianPoint from_affine(const F& x, const F& y) { return {x, y, F::one()}; }
  static JacobianPoint generator() { return Traits::generator(); }

  bool is_identity() const { return z_.is_zero(); }

  bool is_on_curve() const {
    if (is_identity()) return true;
    F z2 = z_.square();
    F z6 = z2.square() * z2;
    return y_.square() == x_.square() * x_ + Traits::b() * z6;
  }

  JacobianPoint dbl() const {
    if (is_identity()) return *this;
    F a = x_.square();
    F b = y_.square();
    F c = b.square();
    F d = ((x_ + b).square() - a - c).dbl();
    F e = a.dbl() + a;
    F f = e.square();
    F x3 = f - d.dbl();
    F c8 = c.dbl().dbl().dbl();
    F y3 = e * (d - x3) - c8;
    F z3 = (y_ * z_).dbl();
    return {x3, y3, z3};
  }

  friend JacobianPoint operator+(const JacobianPoint& p, const JacobianPoint& q) {
    if (p.is_identity()) return q;
    if (q.is_identity()) return p;
    F z1z1 = p.z_.square();
    F z2z2 = q.z_.square();
    F u1 = p.x_ * z2z2;
    F u2 = q.x_ * z1z1;
    F s1 = p.y_ * q.z_ * z2z2;
    F s2 = q.y_ * p.z_ * z1z1;
    if (u1 == u2) {
      if (s1 == s2) return p.dbl();
      return identity();
    }
    F h = u2 - u1;
    F i = h.dbl().square();
    F j = h * i;
    F r = (s2 - s1).dbl();
    F v = u1 * i;
    F x3 = r.square() - j - v.dbl();
    F y3 = r * (v - x3) - (s1 * j).dbl();
    F z3 = ((p.z_ + q.z_).square() - z1z1 - z2z2) * h;
    return {x3, y3, z3};
  }

  JacobianPoint operator-() const { return {x_, -y_, z_}; }

  friend JacobianPoint operator-(const JacobianPoint& p, const JacobianPoint& q) {
    return p + (-q);
  }

  JacobianPoint& operator+=(const JacobianPoint& o) { return *this = *this + o; }

  // Fixed 4-bit window, most significant window first.
  JacobianPoint mul(std::span<const std::uint64_t> scalar) const {
    std::array<JacobianPoint, 16> table;
    table[0] = identity();
    for (std::size_t i = 1; i < table.size(); ++i) table[i] = table[i - 1] + *this;
    JacobianPoint acc;
    for (std::size_t limb = scalar.size(); limb-- > 0;) {
      for (int shift = 60; shift >= 0; shift -= 4) {
        acc = acc.dbl().dbl().dbl().dbl();
        acc += table[(scalar[limb] >> shift) & 0xF];
      }
    }
    return acc;
  }

  JacobianPoint mul(const Fr& scalar) const {
    Limbs e = scalar.to_canonical();
    return mul(std::span<const std::uint64_t>(e));
  }

  friend JacobianPoint operator*(const JacobianPoint& p, const Fr& s) { return p.mul(s); }

  // Affine coordinates; the identity maps to (0, 0).
  std::pair<F, F> to_affine() const {
    if (is_identity()) return {F::zero(), F::zero()};
    F zinv = z_.inverse();
    F zinv2 = zinv.square();
    return {x_ * zinv2, y_ * zinv2 * zinv};
  }

  friend bool operator==(const JacobianPoint& p, const JacobianPoint& q) {
    if (p.is_identity() || q.is_identity()) return p.is_identity() == q.is_identity();
    F z1z1 = p.z_.square();
    F z2z2 = q.z_.square();
    return p.x_ * z2z2 == q.x_ * z1z1 &&
           p.y_ * q.z_ * z2z2 == q.y_ * p.z_ * z1z1;
  }

 private:
  JacobianPoint(const F& x, const F& y, const F& z) : x_(x), y_(y), z_(z) {}

  F x_;
  F y_;
  F z_;
};

struct G1Traits {
  static Fp b();
  static JacobianPoint<Fp, G1Traits> generator();
};

struct G2Traits {
  static Fp2 b();
  static JacobianPoint<Fp2, G2Traits> generator();
};

using G1 = JacobianPoint<Fp, G1Traits>;
using G2 = JacobianPoint<Fp2, G2Traits>;

inline constexpr std::size_t kG1Bytes = 32;
inline constexpr std::size_t kG2Bytes = 64;

// Compressed encodings. The top bit of the first byte flags the identity, the
// next bit carries the sign of y. G2 serializes the imaginary part of x first.
std::array<std::uint8_t, kG1Bytes> encode(const G1& p);
std::array<std::uint8_t, kG2Bytes> encode(const G2& p);
std::optional<G1> decode_g1(std::span<const std::uint8_t> bytes);
// Rejects points outside the order-r subgroup.
std::optional<G2> decode_g2(std::span<const std::uint8_t> bytes);

bool in_prime_subgroup(const G2& p);

}  // namespace ridechain::crypto
