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

#include "ridechain/crypto/pairing.hpp"

#include <algorithm>

namespace ridechain::crypto {
namespace {

// 6u + 2 for the BN parameter u.
constexpr unsigned __int128 kAteLoopCount =
    (static_cast<unsigned __int128>(0x1) << 64) | 0x9d797039be763ba8ULL;
constexpr int kAteLoopBits = 65;
constexpr std::uint64_t kBnU = 4965661367192848881ULL;

bool ate_bit(int i) { return (kAteLoopCount >> i) & 1; }

struct Projective {
  Fp2 x;
  Fp2 y;
  Fp2 z;
};

const Fp& two_inv() {
  static const Fp v = Fp::from_u64(2).inverse();
  return v;
}

G2Prepared::Line doubling_step(Projective& r) {
  const Fp2 a = (r.x * r.y) * two_inv();
  const Fp2 b = r.y.square();
  const Fp2 c = r.z.square();
  const Fp2 d = c.dbl() + c;
  const Fp2 e = G2Traits::b() * d;
  const Fp2 f = e.dbl() + e;
  const Fp2 g = (b + f) * two_inv();
  const Fp2 h = (r.y + r.z).square() - (b + c);
  const Fp2 i = e - b;
  const Fp2 j = r.x.square();
  const Fp2 e2 = e.square();
  r.x = a * (b - f);
  r.y = g.square() - (e2.dbl() + e2);
  r.z = b * h;
  return {i * Fp2::xi(), -h, j.dbl() + j};
}

G2Prepared::Line addition_step(const Fp2& qx, const Fp2& qy, Projective& r) {
  const Fp2 d = r.x - qx * r.z;
  const Fp2 e = r.y - qy * r.z;
  const Fp2 f = d.square();
  const Fp2 g = e.square();
  const Fp2 h = d * f;
  const Fp2 i = r.x * f;
  const Fp2 j = h + r.z * g - i.dbl();
  r.x = d * j;
  r.y = e * (i - j) - h * r.y;
  r.z = r.z * h;
  return {(e * qx - d * qy) * Fp2::xi(), d, -e};
}

Fp12 exp_by_u(const Fp12& f) {
  const std::uint64_t e[1] = {kBnU};
  return pow_limbs(f, std::span<const std::uint64_t>(e));
}

}  // namespace

GT GT::pow(const Fr& e) const {
  Limbs limbs = e.to_canonical();
  return GT(pow_limbs(v_, std::span<const std::uint64_t>(limbs)));
}

std::array<std::uint8_t, kGtBytes> encode(const GT& v) {
  std::array<std::uint8_t, kGtBytes> out{};
  const Fp12& f = v.value();
  const Fp coeffs[12] = {f.c0.c0.c0, f.c0.c0.c1, f.c0.c1.c0, f.c0.c1.c1,
                         f.c0.c2.c0, f.c0.c2.c1, f.c1.c0.c0, f.c1.c0.c1,
                         f.c1.c1.c0, f.c1.c1.c1, f.c1.c2.c0, f.c1.c2.c1};
  for (int i = 0; i < 12; ++i) {
    auto b = coeffs[i].to_bytes();
    std::copy(b.begin(), b.end(), out.begin() + 32 * i);
  }
  return out;
}

std::optional<GT> decode_gt(std::span<const std::uint8_t> bytes) {
  if (bytes.size() != kGtBytes) return std::nullopt;
  Fp coeffs[12];
  for (int i = 0; i < 12; ++i) {
    auto c = Fp::from_bytes(std::span<const std::uint8_t, 32>(bytes.data() + 32 * i, 32));
    if (!c) return std::nullopt;
    coeffs[i] = *c;
  }
  Fp12 f{{{coeffs[0], coeffs[1]}, {coeffs[2], coeffs[3]}, {coeffs[4], coeffs[5]}},
         {{coeffs[6], coeffs[7]}, {coeffs[8], coeffs[9]}, {coeffs[10], coeffs[11]}}};
  if (f == Fp12::zero()) return std::nullopt;
  if (!f.pow(std::span<const std::uint64_t>(Fr::kModulus)).is_one()) return std::nullopt;
  return GT(f);
}

G2Prepared::G2Prepared(const G2& q) {
  if (q.is_identity()) {
    identity_ = true;
    return;
  }
  auto [qx, qy] = q.to_affine();
  Projective r{qx, qy, Fp2::one()};
  lines_.reserve(90);
  for (int i = kAteLoopBits - 2; i >= 0; --i) {
    lines_.push_back(doubling_step(r));
    if (ate_bit(i)) lines_.push_back(addition_step(qx, qy, r));
  }
  // Q1 = pi(Q), Q2 = -pi^2(Q)
  const Fp2 q1x = qx.conjugate() * frobenius_gamma_x();
  const Fp2 q1y = qy.conjugate() * frobenius_gamma_y();
  const Fp2 q2x = q1x.conjugate() * frobenius_gamma_x();
  const Fp2 q2y = -(q1y.conjugate() * frobenius_gamma_y());
  lines_.push_back(addition_step(q1x, q1y, r));
  lines_.push_back(addition_step(q2x, q2y, r));
}

Fp12 miller_loop(std::span<const std::pair<G1, const G2Prepared*>> terms) {
  struct Active {
    Fp px;
    Fp py;
    const G2Prepared* q;
  };
  std::vector<Active> active;
  for (const auto& [p, q] : terms) {
    if (p.is_identity() || q->is_identity()) continue;
    auto [px, py] = p.to_affine();
    active.push_back({px, py, q});
  }
  Fp12 f = Fp12::one();
  if (active.empty()) return f;

  auto apply = [&](std::size_t idx) {
    for (const auto& t : active) {
      const auto& line = t.q->lines()[idx];
      f = f.mul_by_024(line.ell_0, line.ell_vw * t.py, line.ell_vv * t.px);
    }
  };

  std::size_t idx = 0;
  for (int i = kAteLoopBits - 2; i >= 0; --i) {
    f = f.square();
    apply(idx++);
    if (ate_bit(i)) apply(idx++);
  }
  apply(idx++);
  apply(idx++);
  return f;
}

Fp12 final_exponentiation(const Fp12& f) {
  // Easy part: f^((p^6 - 1)(p^2 + 1)).
  Fp12 t = f.conjugate() * f.inverse();
  const Fp12 elt = t.frobenius(2) * t;

  // Hard part, built from f^u, f^(u^2), f^(u^3) and Frobenius maps.
  const Fp12 fp = elt.frobenius(1);
  const Fp12 fp2 = elt.frobenius(2);
  const Fp12 fp3 = fp2.frobenius(1);
  const Fp12 fu = exp_by_u(elt);
  const Fp12 fu2 = exp_by_u(fu);
  const Fp12 fu3 = exp_by_u(fu2);

  const Fp12 y0 = fp * fp2 * fp3;
  const Fp12 y1 = elt.conjugate();
  const Fp12 y2 = fu2.frobenius(2);
  const Fp12 y3 = fu.frobenius(1).conjugate();
  const Fp12 y4 = (fu * fu2.frobenius(1)).conjugate();
  const Fp12 y5 = fu2.conjugate();
  const Fp12 y6 = (fu3 * fu3.frobenius(1)).conjugate();

  Fp12 t0 = y6.square() * y4 * y5;
  Fp12 t1 = y3 * y5 * t0;
  t0 = t0 * y2;
  t1 = (t1.square() * t0).square();
  t0 = t1 * y1;
  t1 = t1 * y0;
  return t0.square() * t1;
}

GT pairing(const G1& p, const G2& q) { return pairing(p, G2Prepared(q)); }

GT pairing(const G1& p, const G2Prepared& q) {
  const std::pair<G1, const G2Prepared*> term{p, &q};
  return multi_pairing(std::span(&term, 1));
}

GT multi_pairing(std::span<const std::pair<G1, const G2Prepared*>> terms) {
  return GT(final_exponentiation(miller_loop(terms)));
}

const G2Prepared& g2_generator_prepared() {
  static const G2Prepared prepared(G2::generator());
  return prepared;
}

}  // namespace ridechain::crypto
