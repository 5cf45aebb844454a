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

#include "ridechain/error.hpp"

namespace ridechain {

std::string_view errc_name(Errc code) {
  switch (code) {
    case Errc::kDegenerateElement: return "DegenerateElement";
    case Errc::kDecryptionFailure: return "DecryptionFailure";
    case Errc::kInvalidEncoding: return "InvalidEncoding";
    case Errc::kDuplicateElement: return "DuplicateElement";
    case Errc::kSetTooSmall: return "SetTooSmall";
    case Errc::kSignatureMismatch: return "SignatureMismatch";
    case Errc::kOutOfCoverage: return "OutOfCoverage";
    case Errc::kElementNotInSet: return "ElementNotInSet";
    case Errc::kOutOfBounds: return "OutOfBounds";
    case Errc::kTooFewWaypoints: return "TooFewWaypoints";
    case Errc::kInvalidArgument: return "InvalidArgument";
    case Errc::kBadSignature: return "BadSignature";
    case Errc::kBadNonce: return "BadNonce";
    case Errc::kInsufficientFunds: return "InsufficientFunds";
    case Errc::kContractRevert: return "ContractRevert";
    case Errc::kUnknownContract: return "UnknownContract";
    case Errc::kImpersonationDetected: return "ImpersonationDetected";
    case Errc::kScenarioError: return "ScenarioError";
  }
  return "Unknown";
}

}  // namespace ridechain
