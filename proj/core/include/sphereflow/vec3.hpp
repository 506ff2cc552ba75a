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

#ifndef SPHEREFLOW_VEC3_HPP
#define SPHEREFLOW_VEC3_HPP

#include <array>
#include <cmath>

namespace sphereflow {

// Small fixed-size vector algebra, generic over the scalar so the same code
// runs on doubles and on reverse-mode AD variables.
template <class T>
using Vec3T = std::array<T, 3>;

using Vec3 = Vec3T<double>;

template <class A, class B>
auto dot(const Vec3T<A>& a, const Vec3T<B>& b) {
  return a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
}

template <class T>
Vec3T<T> cross(const Vec3T<T>& a, const Vec3T<T>& b) {
  return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}

template <class T>
Vec3T<T> operator+(const Vec3T<T>& a, const Vec3T<T>& b) {
  return {a[0] + b[0], a[1] + b[1], a[2] + b[2]};
}

template <class T>
Vec3T<T> operator-(const Vec3T<T>& a, const Vec3T<T>& b) {
  return {a[0] - b[0], a[1] - b[1], a[2] - b[2]};
}

template <class T, class S>
Vec3T<T> operator*(const S& s, const Vec3T<T>& a) {
  return {s * a[0], s * a[1], s * a[2]};
}

inline double norm(const Vec3& a) { return std::sqrt(dot(a, a)); }

}  // namespace sphereflow

#endif  // SPHEREFLOW_VEC3_HPP
