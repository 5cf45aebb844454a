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

#include "ridechain/matching.hpp"

#include <algorithm>
#include <cstdlib>
#include <tuple>
#include <vector>

#include "ridechain/error.hpp"

namespace ridechain::matching {
namespace {

double ratio(double num, double den) { return num == 0 ? 0 : num / den; }

}  // namespace

bool request_in_catalog(const trips::TripCatalog& catalog, const trips::RideRequest& request) {
  return std::any_of(catalog.entries.begin(), catalog.entries.end(),
                     [&](const trips::CatalogEntry& e) {
                       return e.origin_cell == request.origin_cell &&
                              e.destination_cell == request.destination_cell &&
                              e.origin_window.overlaps(request.origin_window);
                     });
}

bool spatial_match(const RideOffer& offer, const trips::DesiredTrip& desired, double delta_m) {
  return haversine_m(offer.pickup, desired.pickup) <= delta_m &&
         haversine_m(offer.dropoff, desired.dropoff) <= delta_m;
}

bool temporal_match(const RideOffer& offer, const trips::DesiredTrip& desired,
                    std::int64_t tau_s) {
  return std::llabs(offer.pickup_time - desired.pickup_time) <= tau_s &&
         std::llabs(offer.dropoff_time - desired.dropoff_time) <= tau_s;
}

double offer_score(const RideOffer& offer, const trips::DesiredTrip& desired,
                   const MatchPreferences& prefs, std::uint64_t max_bid) {
  const double walk = haversine_m(offer.pickup, desired.pickup);
  const double wait = static_cast<double>(std::llabs(offer.pickup_time - desired.pickup_time));
  const double rep = std::clamp(offer.reputation, 0.0, 1.0);
  return prefs.w_delta * ratio(walk, prefs.delta_m) +
         prefs.w_tau * ratio(wait, static_cast<double>(prefs.tau_s)) +
         prefs.w_bid * ratio(static_cast<double>(offer.bid), static_cast<double>(max_bid)) -
         prefs.w_rep * rep;
}

std::optional<std::size_t> select_offer(std::span<const RideOffer> offers,
                                        const trips::DesiredTrip& desired,
                                        const MatchPreferences& prefs) {
  RIDECHAIN_ENFORCE(prefs.delta_m >= 0 && prefs.tau_s >= 0, Errc::kInvalidArgument,
                    "negative slack");
  RIDECHAIN_ENFORCE(prefs.w_delta >= 0 && prefs.w_tau >= 0 && prefs.w_bid >= 0 &&
                        prefs.w_rep >= 0,
                    Errc::kInvalidArgument, "negative weight");

  std::vector<std::size_t> feasible;
  std::uint64_t max_bid = 0;
  for (std::size_t i = 0; i < offers.size(); ++i) {
    if (spatial_match(offers[i], desired, prefs.delta_m) &&
        temporal_match(offers[i], desired, prefs.tau_s)) {
      feasible.push_back(i);
      max_bid = std::max(max_bid, offers[i].bid);
    }
  }
  if (feasible.empty()) return std::nullopt;

  auto key = [&](std::size_t i) {
    const RideOffer& o = offers[i];
    return std::make_tuple(offer_score(o, desired, prefs, max_bid), o.bid,
                           haversine_m(o.pickup, desired.pickup),
                           std::llabs(o.pickup_time - desired.pickup_time), -o.reputation, i);
  };
  return *std::min_element(feasible.begin(), feasible.end(),
                           [&](std::size_t a, std::size_t b) { return key(a) < key(b); });
}

}  // namespace ridechain::matching
