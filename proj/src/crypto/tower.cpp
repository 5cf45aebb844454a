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

#include "ridechain/crypto/tower.hpp"

namespace ridechain::crypto {
namespace {

constexpr Limbs kPMinus1 = detail::sub_small(Fp::kModulus, 1);

struct FrobeniusConstants {
  Fp2 gamma_v;    // xi^((p-1)/3)
  Fp2 gamma_v2;   // xi^(2(p-1)/3)
  Fp2 gamma_w;    // xi^((p-1)/6)
  Fp2 gamma_y;    // xi^((p-1)/2)
};

const FrobeniusConstants& constants() {
  static const FrobeniusConstants k = [] {
    FrobeniusConstants c;
    static constexpr Limbs e3 = detail::div_small(kPMinus1, 3);
    static constexpr Limbs e6 = detail::div_small(kPMinus1, 6);
    static constexpr Limbs e2 = detail::div_small(kPMinus1, 2);
    c.gamma_v = Fp2::xi().pow(e3);
    c.gamma_v2 = c.gamma_v.square();
    c.gamma_w = Fp2::xi().pow(e6);
    c.gamma_y = Fp2::xi().pow(e2);
    return c;
  }();
  return k;
}

}  // namespace

std::optional<Fp> sqrt(const Fp& a) {
  // p = 3 mod 4
  static constexpr Limbs kExp = detail::shr(detail::add_small(Fp::kModulus, 1), 2);
  Fp root = a.pow(kExp);
  if (root.square() != a) return std::nullopt;
  return root;
}

std::optional<Fp2> sqrt(const Fp2& a) {
  static constexpr Limbs kExp34 = detail::shr(detail::sub_small(Fp::kModulus, 3), 2);
  static constexpr Limbs kExp12 = detail::shr(kPMinus1, 1);
  const Fp2 minus_one = -Fp2::one();

  Fp2 a1 = a.pow(kExp34);
  Fp2 alpha = a1.square() * a;
  Fp2 a0 = alpha.conjugate() * alpha;
  if (a0 == minus_one) return std::nullopt;

  Fp2 x0 = a1 * a;
  Fp2 x;
  if (alpha == minus_one) {
    x = Fp2{-x0.c1, x0.c0};
  } else {
    x = (Fp2::one() + alpha).pow(kExp12) * x0;
  }
  if (x.square() != a) return std::nullopt;
  return x;
}

Fp6 Fp6::frobenius() const {
  const auto& k = constants();
  return {c0.conjugate(), c1.conjugate() * k.gamma_v, c2.conjugate() * k.gamma_v2};
}

Fp12 Fp12::frobenius() const {
  return {c0.frobenius(), c1.frobenius() * constants().gamma_w};
}

Fp12 Fp12::mul_by_024(const Fp2& ell_0, const Fp2& ell_vw,
                      const Fp2& ell_vv) const {
  // c0 * (ell_0 + ell_vv v^2)
  Fp6 t0{c0.c0 * ell_0 + (c0.c1 * ell_vv).mul_by_xi(),
         c0.c1 * ell_0 + (c0.c2 * ell_vv).mul_by_xi(),
         c0.c2 * ell_0 + c0.c0 * ell_vv};
  // c1 * (ell_vw v)
  Fp6 t1{(c1.c2 * ell_vw).mul_by_xi(), c1.c0 * ell_vw, c1.c1 * ell_vw};
  Fp6 cross = (c0 + c1) * Fp6{ell_0, ell_vw, ell_vv};
  return {t0 + t1.mul_by_v(), cross - t0 - t1};
}

const Fp2& frobenius_gamma_x() { return constants().gamma_v; }
const Fp2& frobenius_gamma_y() { return constants().gamma_y; }

}  // namespace ridechain::crypto
