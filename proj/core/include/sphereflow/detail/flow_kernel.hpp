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

#ifndef SPHEREFLOW_DETAIL_FLOW_KERNEL_HPP
#define SPHEREFLOW_DETAIL_FLOW_KERNEL_HPP

// Scalar-generic core of one exponential-map radial layer.
//
// The layer maps x to y = cos(r) x + sinc(r) v, where v is the Riemannian
// gradient of the potential and r = |v|. Everything is written in terms of
// s = r^2 so the map and its differential stay smooth at v = 0 (x at an
// anchor), where sqrt would otherwise have an infinite derivative.

#include <cmath>
#include <cstddef>
#include <utility>

#include "sphereflow/autodiff.hpp"
#include "sphereflow/vec3.hpp"

namespace sphereflow::detail {

/// A function of s together with its derivative with respect to s.
struct ValueAndSlope {
  double value;
  double slope;
};

/// cos(sqrt(s)).
ValueAndSlope CosOfRoot(double s);
/// sin(sqrt(s)) / sqrt(s).
ValueAndSlope SincOfRoot(double s);
/// (cos(r) - sin(r)/r) / r^2 with r = sqrt(s); tends to -1/3 at s = 0.
ValueAndSlope CoscOfRoot(double s);

inline double cos_root(double s) { return CosOfRoot(s).value; }
inline double sinc_root(double s) { return SincOfRoot(s).value; }
inline double cosc_root(double s) { return CoscOfRoot(s).value; }

inline ad::Var cos_root(const ad::Var& s) {
  const auto f = CosOfRoot(s.value());
  return ad::Var::unary(s, f.value, f.slope);
}
inline ad::Var sinc_root(const ad::Var& s) {
  const auto f = SincOfRoot(s.value());
  return ad::Var::unary(s, f.value, f.slope);
}
inline ad::Var cosc_root(const ad::Var& s) {
  const auto f = CoscOfRoot(s.value());
  return ad::Var::unary(s, f.value, f.slope);
}

/// Same rule as sphereflow::tangent_basis; the axis choice uses values only.
template <class T>
std::pair<Vec3T<T>, Vec3T<T>> TangentBasis(const Vec3T<T>& x) {
  using std::sqrt;
  int axis = 0;
  for (int i = 1; i < 3; ++i) {
    if (std::abs(value_of(x[i])) < std::abs(value_of(x[axis]))) axis = i;
  }
  // a = unit_axis - x[axis] * x, written without a constant-vector temporary.
  Vec3T<T> a = (-x[axis]) * x;
  a[axis] = a[axis] + 1.0;
  a = (1.0 / sqrt(dot(a, a))) * a;
  return {a, cross(x, a)};
}

template <class T>
Vec3T<T> Normalized(const Vec3T<T>& v) {
  using std::sqrt;
  return (1.0 / sqrt(dot(v, v))) * v;
}

/// Image and differential of one layer at x along two tangent directions.
template <class T>
struct LayerStep {
  Vec3T<T> y;
  Vec3T<T> dy_a;
  Vec3T<T> dy_b;
};

/// `layer` must expose size(), beta(i), eta(i) and anchor(i) in scalar T
/// (or double when T is double).
template <class T, class Layer>
LayerStep<T> EvaluateLayer(const Layer& layer, const Vec3T<T>& x, const Vec3T<T>& e_a,
                           const Vec3T<T>& e_b) {
  using std::exp;
  Vec3T<T> g{};
  Vec3T<T> dg_a{};
  Vec3T<T> dg_b{};
  for (std::size_t i = 0; i < layer.size(); ++i) {
    const auto& m = layer.anchor(i);
    const T w = layer.eta(i) * exp(layer.beta(i) * (dot(m, x) - 1.0));
    const T wb = w * layer.beta(i);
    if (i == 0) {
      g = w * m;
      dg_a = (wb * dot(m, e_a)) * m;
      dg_b = (wb * dot(m, e_b)) * m;
    } else {
      g = g + w * m;
      dg_a = dg_a + (wb * dot(m, e_a)) * m;
      dg_b = dg_b + (wb * dot(m, e_b)) * m;
    }
  }
  const T xg = dot(x, g);
  const Vec3T<T> v = g - xg * x;
  const T s = dot(v, v);
  const T cr = cos_root(s);
  const T sc = sinc_root(s);
  const T cc = cosc_root(s);

  // d/de of y(x) = cos(r) x + sinc(r) v(x) with v(x) = g(x) - (x.g(x)) x.
  auto differential = [&](const Vec3T<T>& e, const Vec3T<T>& dg) {
    const Vec3T<T> dv = dg - (dot(e, g) + dot(x, dg)) * x - xg * e;
    const T vdv = dot(v, dv);
    return (-(sc * vdv)) * x + cr * e + (cc * vdv) * v + sc * dv;
  };
  return {cr * x + sc * v, differential(e_a, dg_a), differential(e_b, dg_b)};
}

}  // namespace sphereflow::detail

#endif  // SPHEREFLOW_DETAIL_FLOW_KERNEL_HPP
