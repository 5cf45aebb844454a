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

#include <cmath>
#include <limits>

#include "gtest/gtest.h"

#include "ridechain/crypto/random.hpp"
#include "ridechain/matching.hpp"

namespace ridechain::matching {
namespace {

using crypto::DeterministicRandom;
using trips::CatalogEntry;
using trips::DesiredTrip;
using trips::RideRequest;
using trips::TimeWindow;
using trips::TripCatalog;

const trips::BoundingBox kTennessee{34.983, -90.310, 36.678, -81.647};

bool scan_oracle(const TripCatalog& cat, const RideRequest& r) {
  for (const auto& e : cat.entries) {
    bool time_ok = std::max(e.origin_window.start, r.origin_window.start) <
                   std::min(e.origin_window.end, r.origin_window.end);
    if (e.origin_cell == r.origin_cell && e.destination_cell == r.destination_cell && time_ok) {
      return true;
    }
  }
  return false;
}

TEST(RequestInCatalog, FourthEntryOfTheWestboundRoute) {
  trips::Grid g(kTennessee, 3, 9);
  trips::PlannedTrip route{{{35.9606, -83.9207}, 0},    {{35.8815, -84.5085}, 1800},
                           {{35.9490, -85.0269}, 3600}, {{36.1628, -85.5016}, 5400},
                           {{36.2081, -86.2911}, 7200}, {{36.1627, -86.7816}, 9000}};
  auto cat = trips::enumerate_trips(trips::cloak_trip(g, route, 900));
  ASSERT_GE(cat.entries.size(), 4u);
  const CatalogEntry& fourth = cat.entries[3];
  RideRequest req{fourth.origin_cell, fourth.origin_window, fourth.destination_cell, 0, {}};
  EXPECT_TRUE(request_in_catalog(cat, req));
  RideRequest wrong_origin = req;
  wrong_origin.origin_cell = 26;
  EXPECT_FALSE(request_in_catalog(cat, wrong_origin));
}

TEST(RequestInCatalog, AgreesWithLinearScan) {
  DeterministicRandom rng(1);
  int positives = 0;
  for (int i = 0; i < 10000; ++i) {
    TripCatalog cat;
    int n = 1 + static_cast<int>(rng.below(8));
    for (int j = 0; j < n; ++j) {
      std::int64_t s = 900 * static_cast<std::int64_t>(rng.below(6));
      cat.entries.push_back({static_cast<int>(rng.below(5)), {s, s + 900},
                             static_cast<int>(rng.below(5)), 1});
    }
    std::int64_t s = 450 * static_cast<std::int64_t>(rng.below(12));
    RideRequest r{static_cast<int>(rng.below(5)), {s, s + 900}, static_cast<int>(rng.below(5)),
                  0, {}};
    bool got = request_in_catalog(cat, r);
    ASSERT_EQ(got, scan_oracle(cat, r));
    positives += got;
  }
  EXPECT_GT(positives, 200);
}

DesiredTrip rider() { return {{36.0, -86.0}, 10000, {36.1, -86.2}, 12000}; }

RideOffer exact_offer(const DesiredTrip& d) {
  return {"d", d.pickup, d.pickup_time, d.dropoff, d.dropoff_time, 10, 1.0};
}

TEST(SpatialMatch, Distances) {
  auto d = rider();
  auto o = exact_offer(d);
  EXPECT_TRUE(spatial_match(o, d, 0));
  o.pickup = offset_point(d.pickup, 0, 500);
  const double walk = haversine_m(o.pickup, d.pickup);
  EXPECT_NEAR(walk, 500, 1e-6);
  EXPECT_FALSE(spatial_match(o, d, 400));
  EXPECT_TRUE(spatial_match(o, d, walk));
  EXPECT_TRUE(spatial_match(o, d, 500.000001));
  EXPECT_FALSE(spatial_match(o, d, std::nextafter(walk, 0.0)));
}

TEST(TemporalMatch, InclusiveBoundaries) {
  auto d = rider();
  auto o = exact_offer(d);
  EXPECT_TRUE(temporal_match(o, d, 0));
  o.pickup_time = d.pickup_time + 61;
  EXPECT_FALSE(temporal_match(o, d, 60));
  o.pickup_time = d.pickup_time - 60;
  o.dropoff_time = d.dropoff_time + 60;
  EXPECT_TRUE(temporal_match(o, d, 60));
}

TEST(Slack, MonotoneInDeltaAndTau) {
  DeterministicRandom rng(2);
  auto d = rider();
  for (int i = 0; i < 2000; ++i) {
    RideOffer o = exact_offer(d);
    o.pickup = offset_point(d.pickup, rng.uniform() * 360, rng.uniform() * 1000);
    o.pickup_time += static_cast<std::int64_t>(rng.below(1200)) - 600;
    double delta = rng.uniform() * 1000;
    std::int64_t tau = static_cast<std::int64_t>(rng.below(900));
    if (spatial_match(o, d, delta)) ASSERT_TRUE(spatial_match(o, d, delta + rng.uniform() * 100));
    if (temporal_match(o, d, tau)) ASSERT_TRUE(temporal_match(o, d, tau + 1 + rng.below(100)));
  }
}

TEST(SelectOffer, SimpleCases) {
  auto d = rider();
  MatchPreferences prefs;
  std::vector<RideOffer> none;
  EXPECT_FALSE(select_offer(none, d, prefs).has_value());
  std::vector<RideOffer> one{exact_offer(d)};
  EXPECT_EQ(*select_offer(one, d, prefs), 0u);
  auto cheap = exact_offer(d);
  auto pricey = exact_offer(d);
  cheap.bid = 10;
  pricey.bid = 12;
  std::vector<RideOffer> two{pricey, cheap};
  EXPECT_EQ(*select_offer(two, d, prefs), 1u);
  auto far = exact_offer(d);
  far.pickup = offset_point(d.pickup, 90, 5000);
  std::vector<RideOffer> infeasible{far};
  EXPECT_FALSE(select_offer(infeasible, d, prefs).has_value());
}

TEST(SelectOffer, DominatedOfferNeverWins) {
  auto d = rider();
  MatchPreferences prefs;
  prefs.w_rep = 0;  // the dominating criterion carries no weight
  auto worse = exact_offer(d);
  auto better = exact_offer(d);
  worse.reputation = 0.5;
  better.reputation = 0.9;
  std::vector<RideOffer> offers{worse, better};
  EXPECT_EQ(*select_offer(offers, d, prefs), 1u);
}

// Independent score evaluation and full ordering.
std::size_t brute_force(const std::vector<RideOffer>& offers, const DesiredTrip& d,
                        const MatchPreferences& p) {
  std::uint64_t max_bid = 0;
  std::vector<std::size_t> ok;
  for (std::size_t i = 0; i < offers.size(); ++i) {
    const auto& o = offers[i];
    bool sp = haversine_m(o.pickup, d.pickup) <= p.delta_m &&
              haversine_m(o.dropoff, d.dropoff) <= p.delta_m;
    bool tm = std::abs(static_cast<double>(o.pickup_time - d.pickup_time)) <= p.tau_s &&
              std::abs(static_cast<double>(o.dropoff_time - d.dropoff_time)) <= p.tau_s;
    if (sp && tm) {
      ok.push_back(i);
      if (o.bid > max_bid) max_bid = o.bid;
    }
  }
  if (ok.empty()) return offers.size();
  std::size_t best = ok[0];
  double best_score = std::numeric_limits<double>::infinity();
  for (std::size_t i : ok) {
    const auto& o = offers[i];
    double walk = haversine_m(o.pickup, d.pickup);
    double wait = std::abs(static_cast<double>(o.pickup_time - d.pickup_time));
    double s = (walk == 0 ? 0 : p.w_delta * walk / p.delta_m) +
               (wait == 0 ? 0 : p.w_tau * wait / static_cast<double>(p.tau_s)) +
               (o.bid == 0 ? 0 : p.w_bid * static_cast<double>(o.bid) / static_cast<double>(max_bid)) -
               p.w_rep * o.reputation;
    bool take = s < best_score;
    if (s == best_score) {
      const auto& b = offers[best];
      double bwalk = haversine_m(b.pickup, d.pickup);
      double bwait = std::abs(static_cast<double>(b.pickup_time - d.pickup_time));
      if (o.bid != b.bid) {
        take = o.bid < b.bid;
      } else if (walk != bwalk) {
        take = walk < bwalk;
      } else if (wait != bwait) {
        take = wait < bwait;
      } else {
        take = o.reputation > b.reputation;
      }
    }
    if (take) {
      best = i;
      best_score = s;
    }
  }
  return best;
}

TEST(SelectOffer, AgreesWithExhaustiveScoring) {
  DeterministicRandom rng(3);
  auto d = rider();
  for (int trial = 0; trial < 1000; ++trial) {
    MatchPreferences p{200 + rng.uniform() * 800, 60 + static_cast<std::int64_t>(rng.below(900)),
                       static_cast<double>(rng.below(3)), static_cast<double>(rng.below(3)),
                       static_cast<double>(rng.below(3)), static_cast<double>(rng.below(3))};
    std::vector<RideOffer> offers;
    int n = 1 + static_cast<int>(rng.below(8));
    for (int i = 0; i < n; ++i) {
      RideOffer o = exact_offer(d);
      // Coarse values so exact ties occur.
      o.pickup = offset_point(d.pickup, 90.0 * rng.below(4), 100.0 * rng.below(10));
      o.pickup_time += 60 * (static_cast<std::int64_t>(rng.below(20)) - 10);
      o.bid = rng.below(4) * 5;
      o.reputation = 0.25 * static_cast<double>(rng.below(5));
      offers.push_back(o);
    }
    auto got = select_offer(offers, d, p);
    std::size_t want = brute_force(offers, d, p);
    ASSERT_EQ(got.value_or(offers.size()), want) << "trial " << trial;
  }
}

}  // namespace
}  // namespace ridechain::matching
