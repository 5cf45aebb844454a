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
#include <set>

#include "gtest/gtest.h"

#include "ridechain/crypto/random.hpp"
#include "ridechain/error.hpp"
#include "ridechain/trips.hpp"

namespace ridechain::trips {
namespace {

using crypto::DeterministicRandom;

const BoundingBox kTennessee{34.983, -90.310, 36.678, -81.647};

Errc code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error thrown";
  return Errc::kInvalidArgument;
}

// Floor-division cell lookup, valid away from cell edges.
int oracle_cell(const BoundingBox& box, int rows, int cols, const GeoPoint& p) {
  int row = static_cast<int>(std::floor((box.north - p.lat) / ((box.north - box.south) / rows)));
  int col = static_cast<int>(std::floor((p.lon - box.west) / ((box.east - box.west) / cols)));
  return std::min(row, rows - 1) * cols + std::min(col, cols - 1);
}

TEST(CloakPoint, CenterAndCorners) {
  Grid g(kTennessee, 3, 9);
  GeoPoint mid{(kTennessee.north + kTennessee.south) / 2, (kTennessee.west + kTennessee.east) / 2};
  Cell c = cloak_point(g, mid);
  EXPECT_EQ(c.row, 1);
  EXPECT_EQ(c.col, 4);
  EXPECT_EQ(c.id, 13);
  EXPECT_EQ(cloak_point(g, {kTennessee.north, kTennessee.west}).id, 0);
  EXPECT_EQ(cloak_point(g, {kTennessee.south, kTennessee.east}).id, 26);
  EXPECT_EQ(code_of([&] { cloak_point(g, {kTennessee.north + 0.01, -85.0}); }),
            Errc::kOutOfBounds);
}

TEST(CloakPoint, SharedEdgesGoToLowerIndex) {
  Grid g({0, 0, 3, 3}, 3, 3);
  EXPECT_EQ(cloak_point(g, {2, 1}).id, 0);  // row edge 0|1 and column edge 0|1
  EXPECT_EQ(cloak_point(g, {1.5, 1}).id, 3);
  EXPECT_EQ(cloak_point(g, {1, 2.5}).id, 5);
}

TEST(CloakPoint, AgreesWithFloorDivisionOracle) {
  DeterministicRandom rng(1);
  for (int i = 0; i < 10000; ++i) {
    int rows = 1 + static_cast<int>(rng.below(12));
    int cols = 1 + static_cast<int>(rng.below(12));
    Grid g(kTennessee, rows, cols);
    GeoPoint p{kTennessee.south + rng.uniform() * (kTennessee.north - kTennessee.south),
               kTennessee.west + rng.uniform() * (kTennessee.east - kTennessee.west)};
    ASSERT_EQ(cloak_point(g, p).id, oracle_cell(kTennessee, rows, cols, p));
  }
}

TEST(CloakPoint, CellsTileTheBox) {
  Grid g(kTennessee, 3, 9);
  double area = 0;
  for (int id = 0; id < g.size(); ++id) {
    auto [nw, se] = g.bounds(g.cell(id));
    area += (nw.lat - se.lat) * (se.lon - nw.lon);
    EXPECT_EQ(cloak_point(g, g.center(g.cell(id))).id, id);
  }
  EXPECT_NEAR(area, (kTennessee.north - kTennessee.south) * (kTennessee.east - kTennessee.west),
              1e-9);
}

TEST(CloakTime, Windows) {
  EXPECT_EQ(cloak_time(0, 900), (TimeWindow{0, 900}));
  EXPECT_EQ(cloak_time(899, 900), (TimeWindow{0, 900}));
  EXPECT_EQ(cloak_time(900, 900), (TimeWindow{900, 1800}));
  EXPECT_EQ(cloak_time(-1, 900), (TimeWindow{-900, 0}));
  EXPECT_THROW(cloak_time(5, 0), Error);
}

PlannedTrip knoxville_to_nashville() {
  return {{{35.9606, -83.9207}, 0},     {{35.8815, -84.5085}, 1800},
          {{35.9490, -85.0269}, 3600},  {{36.1628, -85.5016}, 5400},
          {{36.2081, -86.2911}, 7200},  {{36.1627, -86.7816}, 9000}};
}

TEST(CloakTrip, WestboundRouteFollowsGridGeometry) {
  Grid g(kTennessee, 3, 9);
  auto trip = knoxville_to_nashville();
  auto cloaked = cloak_trip(g, trip, 900);
  ASSERT_EQ(cloaked.size(), 6u);
  for (std::size_t i = 0; i < trip.size(); ++i) {
    EXPECT_EQ(cloaked[i].cell.id, oracle_cell(kTennessee, 3, 9, trip[i].point));
    EXPECT_EQ(cloaked[i].window, cloak_time(trip[i].time, 900));
    if (i > 0) EXPECT_LE(cloaked[i].cell.col, cloaked[i - 1].cell.col);
  }
  EXPECT_GT(cloaked.front().cell.col, cloaked.back().cell.col);
}

TEST(CloakTrip, SingleAndRepeatedCells) {
  Grid g(kTennessee, 3, 9);
  auto one = cloak_trip(g, {{{36.0, -85.0}, 10}}, 900);
  EXPECT_EQ(one.size(), 1u);
  auto same = cloak_trip(g, {{{36.0, -85.0}, 10}, {{36.0001, -85.0001}, 1000}}, 900);
  EXPECT_EQ(same[0].cell, same[1].cell);
  EXPECT_NE(same[0].window, same[1].window);
  EXPECT_THROW(cloak_trip(g, {{{36.0, -85.0}, 10}, {{36.0, -85.0}, 10}}, 900), Error);
}

CloakedTrip distinct_cells(int n) {
  CloakedTrip t;
  for (int i = 0; i < n; ++i) t.push_back({{i, 0, i}, {900 * i, 900 * i + 900}});
  return t;
}

TEST(Catalog, BinomialCount) {
  EXPECT_EQ(enumerate_trips(distinct_cells(2)).entries.size(), 1u);
  EXPECT_EQ(enumerate_trips(distinct_cells(6)).entries.size(), 15u);
  for (int n = 2; n <= 12; ++n) {
    auto cat = enumerate_trips(distinct_cells(n));
    EXPECT_EQ(cat.raw_size, static_cast<std::size_t>(n * (n - 1) / 2));
    EXPECT_EQ(cat.entries.size(), cat.raw_size);
  }
  EXPECT_EQ(code_of([] { enumerate_trips(distinct_cells(1)); }), Errc::kTooFewWaypoints);
}

TEST(Catalog, MatchesNestedLoopOracle) {
  auto t = distinct_cells(5);
  auto cat = enumerate_trips(t);
  ASSERT_EQ(cat.entries.size(), 10u);
  std::size_t idx = 0;
  for (int j = 0; j < 5; ++j) {
    for (int k = j + 1; k < 5; ++k, ++idx) {
      EXPECT_EQ(cat.entries[idx].origin_cell, t[j].cell.id);
      EXPECT_EQ(cat.entries[idx].origin_window, t[j].window);
      EXPECT_EQ(cat.entries[idx].destination_cell, t[k].cell.id);
    }
  }
}

TEST(Catalog, DuplicatesCollapseWithMultiplicity) {
  CloakedTrip t{{{0, 0, 0}, {0, 900}}, {{1, 0, 1}, {900, 1800}}, {{1, 0, 1}, {900, 1800}}};
  auto cat = enumerate_trips(t);
  EXPECT_EQ(cat.raw_size, 3u);
  ASSERT_EQ(cat.entries.size(), 2u);
  EXPECT_EQ(cat.entries[0].multiplicity, 2);
  EXPECT_EQ(cat.entries[1].multiplicity, 1);
}

TEST(Generalize, RequestTriple) {
  Grid g(kTennessee, 3, 9);
  DesiredTrip d{{36.1, -85.5}, 5000, {36.1001, -85.5001}, 5300};
  auto r = generalize_request(g, d, 900, 4000, 7u);
  EXPECT_EQ(r.origin_cell, r.destination_cell);
  EXPECT_EQ(r.origin_window, (TimeWindow{4500, 5400}));
  EXPECT_EQ(r.deadline, 4000);
  EXPECT_EQ(*r.max_offers, 7u);
  d.dropoff = {40.0, -85.0};
  EXPECT_EQ(code_of([&] { generalize_request(g, d, 900, 0); }), Errc::kOutOfBounds);
}

TEST(EncodeLocation, FixedValueAndQuantization) {
  // Interleave of 9000000 (even bits) and 18000000 (odd bits).
  EXPECT_EQ(encode_location({0, 0}), crypto::Fr::from_u64(635833829855232ULL));
  EXPECT_EQ(encode_location({36.123451, -86.5}), encode_location({36.123449, -86.5}));
  EXPECT_NE(encode_location({36.12345, -86.5}), encode_location({36.12346, -86.5}));
  EXPECT_THROW(encode_location({0, 0}, 2), Error);
}

TEST(EncodeLocation, InjectiveOnRandomPoints) {
  DeterministicRandom rng(2);
  std::set<std::pair<std::uint64_t, std::uint64_t>> seen_q;
  std::set<std::array<std::uint8_t, 32>> seen_s;
  while (seen_q.size() < 10000) {
    std::uint64_t qlat = rng.below(180'00000), qlon = rng.below(360'00000);
    if (!seen_q.insert({qlat, qlon}).second) continue;
    auto s = encode_location(dequantize(qlat, qlon, 5), 5);
    ASSERT_TRUE(seen_s.insert(s.to_bytes()).second);
  }
}

TEST(EncodeLocation, ExhaustiveAtPrecisionThreeOnSmallBox) {
  std::set<std::array<std::uint8_t, 32>> seen;
  for (int a = 0; a < 100; ++a) {
    for (int b = 0; b < 100; ++b) {
      GeoPoint p{36.0 + a * 0.001, -86.0 + b * 0.001};
      ASSERT_TRUE(seen.insert(encode_location(p, 3).to_bytes()).second);
    }
  }
}

}  // namespace
}  // namespace ridechain::trips
