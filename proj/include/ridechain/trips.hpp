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
#include <utility>
#include <vector>

#include "ridechain/crypto/field.hpp"
#include "ridechain/geo.hpp"

namespace ridechain::trips {

using Timestamp = std::int64_t;

inline constexpr std::int64_t kDefaultIntervalSeconds = 900;
inline constexpr int kDefaultPrecision = 5;

struct BoundingBox {
  double south = 0;
  double west = 0;
  double north = 0;
  double east = 0;

  bool contains(const GeoPoint& p) const {
    return p.lat >= south && p.lat <= north && p.lon >= west && p.lon <= east;
  }
};

struct Cell {
  int id = 0;
  int row = 0;
  int col = 0;

  friend bool operator==(const Cell&, const Cell&) = default;
};

// Row-major grid over a bounding box. Row 0 is the northern edge, column 0
// the western edge. Points on a shared edge belong to the lower-index cell.
class Grid {
 public:
  Grid(BoundingBox box, int rows, int cols);

  const BoundingBox& box() const { return box_; }
  int rows() const { return rows_; }
  int cols() const { return cols_; }
  int size() const { return rows_ * cols_; }
  double cell_height() const { return (box_.north - box_.south) / rows_; }
  double cell_width() const { return (box_.east - box_.west) / cols_; }

  // Throws Error(kOutOfBounds).
  Cell cell_of(const GeoPoint& p) const;
  Cell cell(int id) const;
  // Cell extent as (north-west corner, south-east corner).
  std::pair<GeoPoint, GeoPoint> bounds(const Cell& c) const;
  GeoPoint center(const Cell& c) const;

 private:
  BoundingBox box_;
  int rows_;
  int cols_;
};

struct TimeWindow {
  Timestamp start = 0;
  Timestamp end = 0;

  bool overlaps(const TimeWindow& o) const { return start < o.end && o.start < end; }
  bool contains(Timestamp t) const { return t >= start && t < end; }

  friend bool operator==(const TimeWindow&, const TimeWindow&) = default;
};

inline Cell cloak_point(const Grid& grid, const GeoPoint& p) { return grid.cell_of(p); }
TimeWindow cloak_time(Timestamp t, std::int64_t interval);

struct Waypoint {
  GeoPoint point;
  Timestamp time = 0;
};

using PlannedTrip = std::vector<Waypoint>;

struct CloakedPoint {
  Cell cell;
  TimeWindow window;

  friend bool operator==(const CloakedPoint&, const CloakedPoint&) = default;
};

using CloakedTrip = std::vector<CloakedPoint>;

// Requires strictly increasing timestamps.
CloakedTrip cloak_trip(const Grid& grid, const PlannedTrip& trip, std::int64_t interval);

struct CatalogEntry {
  int origin_cell = 0;
  TimeWindow origin_window;
  int destination_cell = 0;
  int multiplicity = 1;
};

// Distinct (origin, window, destination) triples in first-seen order.
struct TripCatalog {
  std::vector<CatalogEntry> entries;
  std::size_t raw_size = 0;
};

// Throws Error(kTooFewWaypoints) for fewer than two waypoints.
TripCatalog enumerate_trips(const CloakedTrip& cloaked);

struct DesiredTrip {
  GeoPoint pickup;
  Timestamp pickup_time = 0;
  GeoPoint dropoff;
  // Expected arrival at the dropoff point.
  Timestamp dropoff_time = 0;
};

struct RideRequest {
  int origin_cell = 0;
  TimeWindow origin_window;
  int destination_cell = 0;
  Timestamp deadline = 0;
  std::optional<std::uint32_t> max_offers;
};

RideRequest generalize_request(const Grid& grid, const DesiredTrip& desired,
                               std::int64_t interval, Timestamp deadline,
                               std::optional<std::uint32_t> max_offers = std::nullopt);

// Fixed-point coordinates: round((lat + 90) 10^p), round((lon + 180) 10^p).
std::pair<std::uint64_t, std::uint64_t> quantize(const GeoPoint& p, int precision);
GeoPoint dequantize(std::uint64_t qlat, std::uint64_t qlon, int precision);

// Bit-interleaves the quantized coordinates (latitude in the even bits) into
// one integer. Injective over the quantized domain.
crypto::Fr encode_location(const GeoPoint& p, int precision = kDefaultPrecision);

}  // namespace ridechain::trips
