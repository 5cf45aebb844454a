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

#include "ridechain/trips.hpp"

#include <algorithm>
#include <cmath>

#include "ridechain/error.hpp"

namespace ridechain::trips {
namespace {

// Index of the band containing offset `x` out of `n` bands spanning `extent`;
// shared edges go to the lower band.
int band(double x, double extent, int n) {
  int idx = static_cast<int>(std::ceil(x * n / extent)) - 1;
  return std::clamp(idx, 0, n - 1);
}

std::uint64_t spread_bits(std::uint64_t v) {
  v &= 0xffffffffULL;
  v = (v | v << 16) & 0x0000ffff0000ffffULL;
  v = (v | v << 8) & 0x00ff00ff00ff00ffULL;
  v = (v | v << 4) & 0x0f0f0f0f0f0f0f0fULL;
  v = (v | v << 2) & 0x3333333333333333ULL;
  v = (v | v << 1) & 0x5555555555555555ULL;
  return v;
}

double pow10(int precision) {
  static constexpr double kPowers[] = {1, 10, 100, 1e3, 1e4, 1e5, 1e6};
  return kPowers[precision];
}

}  // namespace

Grid::Grid(BoundingBox box, int rows, int cols) : box_(box), rows_(rows), cols_(cols) {
  RIDECHAIN_ENFORCE(rows >= 1 && cols >= 1, Errc::kInvalidArgument, "grid needs rows, cols >= 1");
  RIDECHAIN_ENFORCE(box.north > box.south && box.east > box.west, Errc::kInvalidArgument,
                    "empty bounding box");
  RIDECHAIN_ENFORCE(box.south >= -90 && box.north <= 90 && box.west >= -180 && box.east <= 180,
                    Errc::kInvalidArgument, "bounding box outside coordinate range");
}

Cell Grid::cell_of(const GeoPoint& p) const {
  RIDECHAIN_ENFORCE(box_.contains(p), Errc::kOutOfBounds, "point outside grid");
  const int row = band(box_.north - p.lat, box_.north - box_.south, rows_);
  const int col = band(p.lon - box_.west, box_.east - box_.west, cols_);
  return {row * cols_ + col, row, col};
}

Cell Grid::cell(int id) const {
  RIDECHAIN_ENFORCE(id >= 0 && id < size(), Errc::kOutOfBounds, "cell id out of range");
  return {id, id / cols_, id % cols_};
}

std::pair<GeoPoint, GeoPoint> Grid::bounds(const Cell& c) const {
  const GeoPoint nw{box_.north - c.row * cell_height(), box_.west + c.col * cell_width()};
  const GeoPoint se{box_.north - (c.row + 1) * cell_height(),
                    box_.west + (c.col + 1) * cell_width()};
  return {nw, se};
}

GeoPoint Grid::center(const Cell& c) const {
  auto [nw, se] = bounds(c);
  return {(nw.lat + se.lat) / 2, (nw.lon + se.lon) / 2};
}

TimeWindow cloak_time(Timestamp t, std::int64_t interval) {
  RIDECHAIN_ENFORCE(interval > 0, Errc::kInvalidArgument, "interval must be positive");
  Timestamp q = t / interval;
  if (t % interval != 0 && t < 0) --q;
  return {q * interval, q * interval + interval};
}

CloakedTrip cloak_trip(const Grid& grid, const PlannedTrip& trip, std::int64_t interval) {
  CloakedTrip out;
  out.reserve(trip.size());
  for (std::size_t i = 0; i < trip.size(); ++i) {
    RIDECHAIN_ENFORCE(i == 0 || trip[i].time > trip[i - 1].time, Errc::kInvalidArgument,
                      "waypoint times must increase");
    out.push_back({grid.cell_of(trip[i].point), cloak_time(trip[i].time, interval)});
  }
  return out;
}

TripCatalog enumerate_trips(const CloakedTrip& cloaked) {
  RIDECHAIN_ENFORCE(cloaked.size() >= 2, Errc::kTooFewWaypoints, "need two waypoints");
  TripCatalog cat;
  for (std::size_t j = 0; j < cloaked.size(); ++j) {
    for (std::size_t k = j + 1; k < cloaked.size(); ++k) {
      ++cat.raw_size;
      CatalogEntry e{cloaked[j].cell.id, cloaked[j].window, cloaked[k].cell.id, 1};
      auto it = std::find_if(cat.entries.begin(), cat.entries.end(), [&](const CatalogEntry& x) {
        return x.origin_cell == e.origin_cell && x.origin_window == e.origin_window &&
               x.destination_cell == e.destination_cell;
      });
      if (it == cat.entries.end()) {
        cat.entries.push_back(e);
      } else {
        ++it->multiplicity;
      }
    }
  }
  return cat;
}

RideRequest generalize_request(const Grid& grid, const DesiredTrip& desired,
                               std::int64_t interval, Timestamp deadline,
                               std::optional<std::uint32_t> max_offers) {
  return {grid.cell_of(desired.pickup).id, cloak_time(desired.pickup_time, interval),
          grid.cell_of(desired.dropoff).id, deadline, max_offers};
}

std::pair<std::uint64_t, std::uint64_t> quantize(const GeoPoint& p, int precision) {
  RIDECHAIN_ENFORCE(precision >= 3 && precision <= 6, Errc::kInvalidArgument,
                    "precision must be in [3, 6]");
  RIDECHAIN_ENFORCE(p.lat >= -90 && p.lat <= 90 && p.lon >= -180 && p.lon <= 180,
                    Errc::kOutOfBounds, "coordinate out of range");
  const double scale = pow10(precision);
  return {static_cast<std::uint64_t>(std::llround((p.lat + 90) * scale)),
          static_cast<std::uint64_t>(std::llround((p.lon + 180) * scale))};
}

GeoPoint dequantize(std::uint64_t qlat, std::uint64_t qlon, int precision) {
  const double scale = pow10(precision);
  return {static_cast<double>(qlat) / scale - 90, static_cast<double>(qlon) / scale - 180};
}

crypto::Fr encode_location(const GeoPoint& p, int precision) {
  auto [qlat, qlon] = quantize(p, precision);
  return crypto::Fr::from_u64(spread_bits(qlat) | spread_bits(qlon) << 1);
}

}  // namespace ridechain::trips
