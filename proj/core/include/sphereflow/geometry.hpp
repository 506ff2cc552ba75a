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

#ifndef SPHEREFLOW_GEOMETRY_HPP
#define SPHEREFLOW_GEOMETRY_HPP

#include <utility>

#include "sphereflow/vec3.hpp"

namespace sphereflow {

/// A point on the unit sphere S^2 embedded in R^3. Construction normalizes.
class UnitVector3 {
 public:
  /// The north pole (0, 0, 1).
  UnitVector3() = default;
  UnitVector3(double e1, double e2, double e3);
  explicit UnitVector3(const Vec3& v);

  /// Wraps components that are already unit length (checked in debug builds).
  static UnitVector3 FromNormalized(const Vec3& v);

  double e1() const noexcept { return v_[0]; }
  double e2() const noexcept { return v_[1]; }
  double e3() const noexcept { return v_[2]; }
  double operator[](int i) const noexcept { return v_[i]; }
  const Vec3& vec() const noexcept { return v_; }

  friend bool operator==(const UnitVector3&, const UnitVector3&) = default;

 private:
  Vec3 v_{0.0, 0.0, 1.0};
};

/// A velocity in the tangent plane at `base`. |v| is geodesic travel distance.
struct TangentVector3 {
  UnitVector3 base;
  Vec3 v{0.0, 0.0, 0.0};
};

/// Geographic coordinates in degrees; lon is kept in (-180, 180].
class GeoCoordinate {
 public:
  GeoCoordinate() = default;
  /// Throws std::invalid_argument if lat is outside [-90, 90] or either value is not finite.
  GeoCoordinate(double lat_deg, double lon_deg);

  double lat() const noexcept { return lat_; }
  double lon() const noexcept { return lon_; }

  friend bool operator==(const GeoCoordinate&, const GeoCoordinate&) = default;

 private:
  double lat_ = 0.0;
  double lon_ = 0.0;
};

/// Wraps any finite longitude into (-180, 180].
double NormalizeLongitude(double lon_deg);

/// arccos of the clamped dot product, in [0, pi].
double geodesic_distance(const UnitVector3& a, const UnitVector3& b);

/// Closed-form exponential map of the sphere. `tv.base` must equal `base`.
UnitVector3 exp_map(const UnitVector3& base, const TangentVector3& tv);

/// Inverse of exp_map away from the antipode; throws AntipodalPoints when
/// the geodesic distance is at least pi - 1e-6.
TangentVector3 log_map(const UnitVector3& base, const UnitVector3& target);

/// Right-handed orthonormal frame (e_a, e_b) of the tangent plane at `base`.
/// e_a is the least-aligned standard axis Gram-Schmidt'ed against base,
/// e_b = base x e_a.
std::pair<Vec3, Vec3> tangent_basis(const UnitVector3& base);

UnitVector3 geo_to_unit(const GeoCoordinate& g);
GeoCoordinate unit_to_geo(const UnitVector3& u);

/// Projects an ambient vector onto the tangent plane at `base`.
Vec3 project_to_tangent(const UnitVector3& base, const Vec3& v);

}  // namespace sphereflow

#endif  // SPHEREFLOW_GEOMETRY_HPP
