// Copyright 2026 The sphereflow Authors.
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

#include "sphereflow/geometry.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "sphereflow/error.hpp"

namespace sphereflow {
namespace {

constexpr double kSeriesThreshold = 1e-8;
constexpr double kAntipodalMargin = 1e-6;
constexpr double kDegPerRad = 180.0 / std::numbers::pi;

}  // namespace

UnitVector3::UnitVector3(double e1, double e2, double e3) : UnitVector3(Vec3{e1, e2, e3}) {}

UnitVector3::UnitVector3(const Vec3& v) {
  const double n = norm(v);
  if (!(n > 0.0) || !std::isfinite(n)) {
    throw std::invalid_argument("UnitVector3: cannot normalize a zero or non-finite vector");
  }
  v_ = (1.0 / n) * v;
}

UnitVector3 UnitVector3::FromNormalized(const Vec3& v) {
  assert(std::abs(dot(v, v) - 1.0) < 1e-10);
  UnitVector3 u;
  u.v_ = v;
  return u;
}

double NormalizeLongitude(double lon_deg) {
  double lon = std::fmod(lon_deg, 360.0);
  if (lon <= -180.0) lon += 360.0;
  if (lon > 180.0) lon -= 360.0;
  return lon;
}

GeoCoordinate::GeoCoordinate(double lat_deg, double lon_deg) {
  if (!std::isfinite(lat_deg) || !std::isfinite(lon_deg)) {
    throw std::invalid_argument("GeoCoordinate: non-finite coordinate");
  }
  if (lat_deg < -90.0 || lat_deg > 90.0) {
    throw std::invalid_argument("GeoCoordinate: latitude outside [-90, 90]");
  }
  lat_ = lat_deg;
  lon_ = NormalizeLongitude(lon_deg);
}

double geodesic_distance(const UnitVector3& a, const UnitVector3& b) {
  return std::acos(std::clamp(dot(a.vec(), b.vec()), -1.0, 1.0));
}

UnitVector3 exp_map(const UnitVector3& base, const TangentVector3& tv) {
  const Vec3& x = base.vec();
  const double speed = norm(tv.v);
  if (speed < kSeriesThreshold) {
    return UnitVector3(x + (1.0 - speed * speed / 6.0) * tv.v);
  }
  // Renormalizing absorbs the O(eps) drift of cos/sin for long arcs.
  return UnitVector3(std::cos(speed) * x + (std::sin(speed) / speed) * tv.v);
}

TangentVector3 log_map(const UnitVector3& base, const UnitVector3& target) {
  const double d = geodesic_distance(base, target);
  if (d >= std::numbers::pi - kAntipodalMargin) throw AntipodalPoints(d);
  const Vec3 w = project_to_tangent(base, target.vec());
  const double wn = norm(w);
  if (wn == 0.0) return {base, {0.0, 0.0, 0.0}};
  // atan2 is accurate at both ends of [0, pi), unlike acos near 0.
  const double angle = std::atan2(wn, dot(base.vec(), target.vec()));
  return {base, (angle / wn) * w};
}

std::pair<Vec3, Vec3> tangent_basis(const UnitVector3& base) {
  const Vec3& x = base.vec();
  int axis = 0;
  for (int i = 1; i < 3; ++i) {
    if (std::abs(x[i]) < std::abs(x[axis])) axis = i;
  }
  Vec3 a{0.0, 0.0, 0.0};
  a[axis] = 1.0;
  a = a - x[axis] * x;
  a = (1.0 / norm(a)) * a;
  return {a, cross(x, a)};
}

UnitVector3 geo_to_unit(const GeoCoordinate& g) {
  const double lat = g.lat() / kDegPerRad;
  const double lon = g.lon() / kDegPerRad;
  return UnitVector3(std::cos(lat) * std::cos(lon), std::cos(lat) * std::sin(lon), std::sin(lat));
}

GeoCoordinate unit_to_geo(const UnitVector3& u) {
  const double lat = std::atan2(u.e3(), std::hypot(u.e1(), u.e2())) * kDegPerRad;
  const double lon = std::atan2(u.e2(), u.e1()) * kDegPerRad;
  return GeoCoordinate(std::clamp(lat, -90.0, 90.0), lon);
}

Vec3 project_to_tangent(const UnitVector3& base, const Vec3& v) {
  return v - dot(base.vec(), v) * base.vec();
}

}  // namespace sphereflow
