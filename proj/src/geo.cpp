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

#include "ridechain/geo.hpp"

#include <cmath>
#include <numbers>

#include "ridechain/error.hpp"

namespace ridechain {
namespace {

double rad(double deg) { return deg * std::numbers::pi / 180.0; }
double deg(double rad) { return rad * 180.0 / std::numbers::pi; }

}  // namespace

double haversine_m(const GeoPoint& a, const GeoPoint& b) {
  const double dlat = rad(b.lat - a.lat);
  const double dlon = rad(b.lon - a.lon);
  const double s = std::sin(dlat / 2) * std::sin(dlat / 2) +
                   std::cos(rad(a.lat)) * std::cos(rad(b.lat)) * std::sin(dlon / 2) *
                       std::sin(dlon / 2);
  return 2 * kEarthRadiusMeters * std::asin(std::min(1.0, std::sqrt(s)));
}

GeoPoint offset_point(const GeoPoint& from, double bearing_deg, double meters) {
  const double d = meters / kEarthRadiusMeters;
  const double b = rad(bearing_deg);
  const double lat1 = rad(from.lat);
  const double lon1 = rad(from.lon);
  const double lat2 =
      std::asin(std::sin(lat1) * std::cos(d) + std::cos(lat1) * std::sin(d) * std::cos(b));
  const double lon2 = lon1 + std::atan2(std::sin(b) * std::sin(d) * std::cos(lat1),
                                        std::cos(d) - std::sin(lat1) * std::sin(lat2));
  return {deg(lat2), deg(lon2)};
}

Coverage Coverage::circle(GeoPoint center, double radius_m) {
  RIDECHAIN_ENFORCE(radius_m >= 0, Errc::kInvalidArgument, "negative coverage radius");
  Coverage c;
  c.kind = Kind::kCircle;
  c.center = center;
  c.radius_m = radius_m;
  return c;
}

Coverage Coverage::make_polygon(std::vector<GeoPoint> vertices) {
  RIDECHAIN_ENFORCE(vertices.size() >= 3, Errc::kInvalidArgument,
                    "coverage polygon needs three vertices");
  Coverage c;
  c.kind = Kind::kPolygon;
  c.polygon = std::move(vertices);
  return c;
}

bool Coverage::contains(const GeoPoint& p) const {
  if (kind == Kind::kCircle) return haversine_m(center, p) <= radius_m;
  // Even-odd rule in the lat/lon plane, with an explicit edge test.
  bool inside = false;
  const std::size_t n = polygon.size();
  for (std::size_t i = 0, j = n - 1; i < n; j = i++) {
    const GeoPoint& a = polygon[i];
    const GeoPoint& b = polygon[j];
    const double cross = (b.lon - a.lon) * (p.lat - a.lat) - (b.lat - a.lat) * (p.lon - a.lon);
    if (cross == 0 && std::min(a.lon, b.lon) <= p.lon && p.lon <= std::max(a.lon, b.lon) &&
        std::min(a.lat, b.lat) <= p.lat && p.lat <= std::max(a.lat, b.lat)) {
      return true;
    }
    if ((a.lat > p.lat) != (b.lat > p.lat)) {
      const double lon_at = a.lon + (p.lat - a.lat) * (b.lon - a.lon) / (b.lat - a.lat);
      if (p.lon < lon_at) inside = !inside;
    }
  }
  return inside;
}

}  // namespace ridechain
