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

#include <vector>

namespace ridechain {

struct GeoPoint {
  double lat = 0;
  double lon = 0;

  friend bool operator==(const GeoPoint&, const GeoPoint&) = default;
};

inline constexpr double kEarthRadiusMeters = 6371008.8;

// Great-circle distance in meters.
double haversine_m(const GeoPoint& a, const GeoPoint& b);

// Destination reached from `from` after `meters` along `bearing_deg`.
GeoPoint offset_point(const GeoPoint& from, double bearing_deg, double meters);

// Region served by a location prover: a disc or a simple polygon.
struct Coverage {
  enum class Kind { kCircle, kPolygon };

  Kind kind = Kind::kCircle;
  GeoPoint center;
  double radius_m = 0;
  std::vector<GeoPoint> polygon;

  static Coverage circle(GeoPoint center, double radius_m);
  static Coverage make_polygon(std::vector<GeoPoint> vertices);

  // Boundary points count as inside.
  bool contains(const GeoPoint& p) const;
};

}  // namespace ridechain
