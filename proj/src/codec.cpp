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

#include "ridechain/codec.hpp"

#include "ridechain/error.hpp"

namespace ridechain::codec {

std::optional<Bytes> bytes_from_hex(std::string_view s) {
  try {
    return from_hex(s);
  } catch (const Error&) {
    return std::nullopt;
  }
}

std::optional<crypto::G1> g1_from_hex(std::string_view s) {
  auto b = bytes_from_hex(s);
  return b ? crypto::decode_g1(*b) : std::nullopt;
}

std::optional<crypto::G2> g2_from_hex(std::string_view s) {
  auto b = bytes_from_hex(s);
  return b ? crypto::decode_g2(*b) : std::nullopt;
}

std::optional<crypto::Scalar> scalar_from_hex(std::string_view s) {
  auto b = bytes_from_hex(s);
  return b ? crypto::decode_scalar(*b) : std::nullopt;
}

std::optional<crypto::AttestationSignature> signature_from_hex(std::string_view s) {
  auto b = bytes_from_hex(s);
  return b ? crypto::decode_attestation(*b) : std::nullopt;
}

}  // namespace ridechain::codec
