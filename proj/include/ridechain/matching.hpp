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

#include <cstdint>
#include <optional>
#include <span>
#include <string>

#include "ridechain/trips.hpp"

namespace ridechain::matching {

using trips::Timestamp;

// Decrypted driver offer. `bid` is the price per distance unit; `reputation`
// is the driver's score in [0, 1] at offer time.
struct RideOffer {
  std::string driver;
  GeoPoint pickup;
  Timestamp pickup_time = 0;
  GeoPoint dropoff;
  Timestamp dropoff_time = 0;
  std::uint64_t bid = 0;
  double reputation = 1.0;
};

struct MatchPreferences {
  double delta_m = 500;
  std::int64_t tau_s = 600;
  double w_delta = 1;
  double w_tau = 1;
  double w_bid = 1;
  double w_rep = 1;
};

bool request_in_catalog(const trips::TripCatalog& catalog, const trips::RideRequest& request);

bool spatial_match(const RideOffer& offer, const trips::DesiredTrip& desired, double delta_m);
bool temporal_match(const RideOffer& offer, const trips::DesiredTrip& desired,
                    std::int64_t tau_s);

// w_delta walk/delta + w_tau wait/tau + w_bid bid/max_bid - w_rep reputation,
// with 0/0 read as 0.
double offer_score(const RideOffer& offer, const trips::DesiredTrip& desired,
                   const MatchPreferences& prefs, std::uint64_t max_bid);

// Index of the best feasible offer. Equal scores fall back to lower bid, then
// shorter walk, shorter wait, higher reputation, and finally earlier position.
std::optional<std::size_t> select_offer(std::span<const RideOffer> offers,
                                        const trips::DesiredTrip& desired,
                                        const MatchPreferences& prefs);

}  // namespace ridechain::matching
