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
#include <string>
#include <string_view>

#include "ridechain/bytes.hpp"
#include "ridechain/crypto/schemes.hpp"

// Hex text forms of group elements and scalars, as stored in contract state.
namespace ridechain::codec {

template <class T>
std::string hex(const T& v) {
  return to_hex(crypto::encode(v));
}

std::optional<Bytes> bytes_from_hex(std::string_view s);
std::optional<crypto::G1> g1_from_hex(std::string_view s);
std::optional<crypto::G2> g2_from_hex(std::string_view s);
std::optional<crypto::Scalar> scalar_from_hex(std::string_view s);
std::optional<crypto::AttestationSignature> signature_from_hex(std::string_view s);

}  // namespace ridechain::codec
