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
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>

namespace ridechain::crypto {

// Little-endian 64-bit limbs of a 256-bit integer.
using Limbs = std::array<std::uint64_t, 4>;

namespace detail {

using u128 = unsigned __int128;

constexpr bool geq(const Limbs& a, const Limbs& b) {
  for (int i = 3; i >= 0; --i) {
    if (a[i] != b[i]) return a[i] > b[i];
  }
  return true;
}

constexpr std::uint64_t add_in_place(Limbs& a, const Limbs& b) {
  std::uint64_t carry = 0;
  for (int i = 0; i < 4; ++i) {
    u128 s = static_cast<u128>(a[i]) + b[i] + carry;
    a[i] = static_cast<std::uint64_t>(s);
    carry = static_cast<std::uint64_t>(s >> 64);
  }
  return carry;
}

constexpr std::uint64_t sub_in_place(Limbs& a, const Limbs& b) {
  std::uint64_t borrow = 0;
  for (int i = 0; i < 4; ++i) {
    u128 d = static_cast<u128>(a[i]) - b[i] - borrow;
    a[i] = static_cast<std::uint64_t>(d);
    borrow = static_cast<std::uint64_t>(d >> 64) & 1;
  }
  return borrow;
}

constexpr Limbs shr(Limbs a, int bits) {
  for (int k = 0; k < bits; ++k) {
    for (int i = 0; i < 4; ++i) {
      a[i] = (a[i] >> 1) | (i < 3 ? (a[i + 1] << 63) : 0);
    }
  }
  return a;
}

constexpr Limbs sub_small(Limbs a, std::uint64_t v) {
  sub_in_place(a, Limbs{v, 0, 0, 0});
  return a;
}

constexpr Limbs add_small(Limbs a, std::uint64_t v) {
  add_in_place(a, Limbs{v, 0, 0, 0});
  return a;
}

// -m^{-1} mod 2^64 by Newton iteration.
constexpr std::uint64_t mont_inv(std::uint64_t m0) {
  std::uint64_t x = 1;
  for (int i = 0; i < 6; ++i) x *= 2 - m0 * x;
  return ~x + 1;
}

// 2^bits mod m, for m < 2^255.
constexpr Limbs pow2_mod(const Limbs& m, int bits) {
  Limbs x{1, 0, 0, 0};
  for (int i = 0; i < bits; ++i) {
    Limbs y = x;
    add_in_place(x, y);
    if (geq(x, m)) sub_in_place(x, m);
  }
  return x;
}

// CIOS Montgomery multiplication: a * b * 2^-256 mod m, inputs < m.
inline Limbs mont_mul(const Limbs& a, const Limbs& b, const Limbs& m,
                      std::uint64_t inv) {
  std::uint64_t t[6] = {0, 0, 0, 0, 0, 0};
  for (int i = 0; i < 4; ++i) {
    std::uint64_t carry = 0;
    for (int j = 0; j < 4; ++j) {
      u128 s = static_cast<u128>(a[j]) * b[i] + t[j] + carry;
      t[j] = static_cast<std::uint64_t>(s);
      carry = static_cast<std::uint64_t>(s >> 64);
    }
    u128 s = static_cast<u128>(t[4]) + carry;
    t[4] = static_cast<std::uint64_t>(s);
    t[5] = static_cast<std::uint64_t>(s >> 64);

    std::uint64_t k = t[0] * inv;
    s = static_cast<u128>(k) * m[0] + t[0];
    carry = static_cast<std::uint64_t>(s >> 64);
    for (int j = 1; j < 4; ++j) {
      s = static_cast<u128>(k) * m[j] + t[j] + carry;
      t[j - 1] = static_cast<std::uint64_t>(s);
      carry = static_cast<std::uint64_t>(s >> 64);
    }
    s = static_cast<u128>(t[4]) + carry;
    t[3] = static_cast<std::uint64_t>(s);
    t[4] = t[5] + static_cast<std::uint64_t>(s >> 64);
  }
  Limbs r{t[0], t[1], t[2], t[3]};
  if (t[4] != 0 || geq(r, m)) sub_in_place(r, m);
  return r;
}

}  // namespace detail

// Square-and-multiply over any type with one(), square() and operator*.
// The exponent is little-endian limbs.
template <class T>
T pow_limbs(const T& base, std::span<const std::uint64_t> exponent) {
  T result = T::one();
  for (std::size_t i = exponent.size(); i-- > 0;) {
    for (int bit = 63; bit >= 0; --bit) {
      result = result.square();
      if ((exponent[i] >> bit) & 1) result = result * base;
    }
  }
  return result;
}

// Prime field element in Montgomery form. P supplies kModulus (< 2^254).
template <class P>
class MontField {
 public:
  static constexpr Limbs kModulus = P::kModulus;
  static constexpr std::uint64_t kInv = detail::mont_inv(P::kModulus[0]);
  static constexpr Limbs kR = detail::pow2_mod(P::kModulus, 256);
  static constexpr Limbs kR2 = detail::pow2_mod(P::kModulus, 512);
  static constexpr std::size_t kBytes = 32;

  constexpr MontField() = default;

  static MontField zero() { return MontField(); }
  static MontField one() { return from_raw(kR); }

  static MontField from_u64(std::uint64_t v) {
    return from_raw(detail::mont_mul(Limbs{v, 0, 0, 0}, kR2, kModulus, kInv));
  }

  static MontField from_i64(std::int64_t v) {
    return v >= 0 ? from_u64(static_cast<std::uint64_t>(v))
                  : -from_u64(static_cast<std::uint64_t>(-(v + 1)) + 1);
  }

  // Accepts only canonical values (< modulus).
  static std::optional<MontField> from_canonical(const Limbs& value) {
    if (detail::geq(value, kModulus)) return std::nullopt;
    return from_raw(detail::mont_mul(value, kR2, kModulus, kInv));
  }

  // Any 256-bit integer, reduced modulo the field prime.
  static MontField reduce(Limbs value) {
    while (detail::geq(value, kModulus)) detail::sub_in_place(value, kModulus);
    return from_raw(detail::mont_mul(value, kR2, kModulus, kInv));
  }

  // Big-endian 512-bit integer reduced modulo the prime; bias is < 2^-250.
  static MontField reduce_wide(std::span<const std::uint8_t, 64> bytes) {
    MontField hi = reduce(limbs_from_be(bytes.subspan<0, 32>()));
    MontField lo = reduce(limbs_from_be(bytes.subspan<32, 32>()));
    // hi * 2^256 + lo; from_raw(kR2) is the field element 2^256.
    return hi * from_raw(kR2) + lo;
  }

  static std::optional<MontField> from_bytes(
      std::span<const std::uint8_t, 32> bytes) {
    return from_canonical(limbs_from_be(bytes));
  }

  std::array<std::uint8_t, 32> to_bytes() const {
    Limbs c = to_canonical();
    std::array<std::uint8_t, 32> out{};
    for (int i = 0; i < 4; ++i) {
      for (int b = 0; b < 8; ++b) {
        out[31 - (i * 8 + b)] = static_cast<std::uint8_t>(c[i] >> (8 * b));
      }
    }
    return out;
  }

  Limbs to_canonical() const {
    return detail::mont_mul(v_, Limbs{1, 0, 0, 0}, kModulus, kInv);
  }

  bool is_zero() const { return v_ == Limbs{0, 0, 0, 0}; }
  bool is_one() const { return v_ == kR; }

  // True when the canonical value exceeds (modulus - 1) / 2.
  bool is_odd_half() const {
    static constexpr Limbs kHalf = detail::shr(detail::sub_small(kModulus, 1), 1);
    Limbs c = to_canonical();
    return c != kHalf && detail::geq(c, kHalf);
  }

  friend MontField operator+(MontField a, const MontField& b) {
    std::uint64_t carry = detail::add_in_place(a.v_, b.v_);
    if (carry || detail::geq(a.v_, kModulus)) detail::sub_in_place(a.v_, kModulus);
    return a;
  }

  friend MontField operator-(MontField a, const MontField& b) {
    if (detail::sub_in_place(a.v_, b.v_)) detail::add_in_place(a.v_, kModulus);
    return a;
  }

  MontField operator-() const {
    if (is_zero()) return *this;
    MontField r = from_raw(kModulus);
    detail::sub_in_place(r.v_, v_);
    return r;
  }

  friend MontField operator*(const MontField& a, const MontField& b) {
    return from_raw(detail::mont_mul(a.v_, b.v_, kModulus, kInv));
  }

  MontField& operator+=(const MontField& o) { return *this = *this + o; }
  MontField& operator-=(const MontField& o) { return *this = *this - o; }
  MontField& operator*=(const MontField& o) { return *this = *this * o; }

  MontField square() const { return *this * *this; }
  MontField dbl() const { return *this + *this; }

  MontField pow(std::span<const std::uint64_t> exponent) const {
    return pow_limbs(*this, exponent);
  }

  MontField pow(const MontField& exponent) const {
    Limbs e = exponent.to_canonical();
    return pow_limbs(*this, std::span<const std::uint64_t>(e));
  }

  // Fermat inversion; zero maps to zero.
  MontField inverse() const {
    static constexpr Limbs kExp = detail::sub_small(kModulus, 2);
    return pow_limbs(*this, std::span<const std::uint64_t>(kExp));
  }

  friend bool operator==(const MontField& a, const MontField& b) {
    return a.v_ == b.v_;
  }

 private:
  static MontField from_raw(const Limbs& raw) {
    MontField f;
    f.v_ = raw;
    return f;
  }

  static Limbs limbs_from_be(std::span<const std::uint8_t, 32> bytes) {
    Limbs l{};
    for (int i = 0; i < 4; ++i) {
      for (int b = 0; b < 8; ++b) {
        l[i] |= static_cast<std::uint64_t>(bytes[31 - (i * 8 + b)]) << (8 * b);
      }
    }
    return l;
  }

  Limbs v_{};
};

struct FpParams {
  // BN254 base field prime.
  static constexpr Limbs kModulus{0x3c208c16d87cfd47ULL, 0x97816a916871ca8dULL,
                                  0xb85045b68181585dULL, 0x30644e72e131a029ULL};
};

struct FrParams {
  // BN254 group order.
  static constexpr Limbs kModulus{0x43e1f593f0000001ULL, 0x2833e84879b97091ULL,
                                  0xb85045b68181585dULL, 0x30644e72e131a029ULL};
};

using Fp = MontField<FpParams>;
using Fr = MontField<FrParams>;

}  // namespace ridechain::crypto
