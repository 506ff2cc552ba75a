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

#include "sphereflow/radial_flow.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "sphereflow/detail/flow_kernel.hpp"
#include "sphereflow/error.hpp"

namespace sphereflow {
namespace detail {
namespace {

// Truncated Taylor series in s, used where the closed forms cancel badly.
constexpr double kSeriesCutoff = 0.25;
constexpr int kSeriesTerms = 12;

double Factorial(int n) {
  double f = 1.0;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

}  // namespace

ValueAndSlope CosOfRoot(double s) {
  const double r = std::sqrt(s);
  return {std::cos(r), -0.5 * SincOfRoot(s).value};
}

ValueAndSlope SincOfRoot(double s) {
  if (s < kSeriesCutoff) {
    // sinc = sum_k (-s)^k / (2k+1)!
    double value = 0.0;
    double slope = 0.0;
    double power = 1.0;  // (-s)^k
    for (int k = 0; k < kSeriesTerms; ++k) {
      value += power / Factorial(2 * k + 1);
      if (k + 1 < kSeriesTerms) slope += -(k + 1) * power / Factorial(2 * k + 3);
      power *= -s;
    }
    return {value, slope};
  }
  const double r = std::sqrt(s);
  const double sinc = std::sin(r) / r;
  return {sinc, 0.5 * (std::cos(r) - sinc) / s};
}

ValueAndSlope CoscOfRoot(double s) {
  if (s < kSeriesCutoff) {
    // c = sum_{k>=1} (-1)^k 2k s^(k-1) / (2k+1)!
    double value = 0.0;
    double slope = 0.0;
    double power = 1.0;  // s^(k-1)
    for (int k = 1; k <= kSeriesTerms; ++k) {
      const double sign = (k % 2 == 0) ? 1.0 : -1.0;
      value += sign * 2.0 * k * power / Factorial(2 * k + 1);
      if (k + 1 <= kSeriesTerms) {
        const double next_sign = -sign;
        slope += next_sign * 2.0 * (k + 1) * k * power / Factorial(2 * k + 3);
      }
      power *= s;
    }
    return {value, slope};
  }
  const double r = std::sqrt(s);
  const double sinc = std::sin(r) / r;
  const double c = (std::cos(r) - sinc) / s;
  return {c, (-sinc - 3.0 * c) / (2.0 * s)};
}

}  // namespace detail

namespace {

constexpr double kEtaSumTolerance = 1e-10;
constexpr double kDegenerateDeterminant = 1e-300;

}  // namespace

RadialLayer::RadialLayer(std::vector<RadialComponent> components)
    : components_(std::move(components)) {
  if (components_.empty()) throw std::invalid_argument("RadialLayer: needs p >= 1 components");
  double eta_sum = 0.0;
  for (const auto& c : components_) {
    if (!(c.beta > 0.0) || !std::isfinite(c.beta)) {
      throw std::invalid_argument("RadialLayer: beta must be positive and finite");
    }
    if (!(c.eta > 0.0)) throw std::invalid_argument("RadialLayer: eta must be positive");
    eta_sum += c.eta;
  }
  if (std::abs(eta_sum - 1.0) > kEtaSumTolerance) {
    throw std::invalid_argument("RadialLayer: eta must sum to 1");
  }
}

double potential(const RadialLayer& layer, const UnitVector3& x) {
  double phi = 0.0;
  for (const auto& c : layer.components()) {
    phi += c.eta / c.beta * std::exp(c.beta * (dot(c.anchor.vec(), x.vec()) - 1.0));
  }
  return phi;
}

TangentVector3 riemannian_gradient(const RadialLayer& layer, const UnitVector3& x) {
  Vec3 g{0.0, 0.0, 0.0};
  for (const auto& c : layer.components()) {
    g = g + (c.eta * std::exp(c.beta * (dot(c.anchor.vec(), x.vec()) - 1.0))) * c.anchor.vec();
  }
  return {x, project_to_tangent(x, g)};
}

LayerJacobian layer_jacobian(const RadialLayer& layer, const UnitVector3& x) {
  LayerJacobian jac;
  jac.input_basis = tangent_basis(x);
  const auto& [e_a, e_b] = jac.input_basis;
  const auto step = detail::EvaluateLayer<double>(layer, x.vec(), e_a, e_b);
  jac.y = UnitVector3(step.y);
  jac.output_basis = tangent_basis(jac.y);
  const auto& [f_a, f_b] = jac.output_basis;
  jac.m = {{{dot(f_a, step.dy_a), dot(f_a, step.dy_b)}, {dot(f_b, step.dy_a), dot(f_b, step.dy_b)}}};
  return jac;
}

LayerResult layer_forward(const RadialLayer& layer, const UnitVector3& x) {
  const LayerJacobian jac = layer_jacobian(layer, x);
  const double det = jac.determinant();
  if (!(std::abs(det) >= kDegenerateDeterminant)) throw DegenerateJacobian(det);
  return {jac.y, std::log(std::abs(det))};
}

StackResult stack_forward(const FlowStack& stack, const UnitVector3& x) {
  StackResult out{x, 0.0};
  for (const auto& layer : stack.layers()) {
    const LayerResult r = layer_forward(layer, out.z);
    out.z = r.y;
    out.total_log_det += r.log_det;
  }
  return out;
}

std::vector<UnitVector3> stack_trajectory(const FlowStack& stack, const UnitVector3& x) {
  std::vector<UnitVector3> path;
  path.reserve(stack.size() + 1);
  path.push_back(x);
  for (const auto& layer : stack.layers()) path.push_back(layer_forward(layer, path.back()).y);
  return path;
}

namespace {

// Residual distance that stays accurate for tiny separations, where acos of
// the dot product loses half the digits.
double Separation(const UnitVector3& a, const UnitVector3& b) {
  return std::atan2(norm(cross(a.vec(), b.vec())), dot(a.vec(), b.vec()));
}

UnitVector3 ApplyLayer(const RadialLayer& layer, const UnitVector3& x) {
  const auto [e_a, e_b] = tangent_basis(x);
  return UnitVector3(detail::EvaluateLayer<double>(layer, x.vec(), e_a, e_b).y);
}

struct LayerSolve {
  UnitVector3 x;
  double residual;
  int iterations;
};

LayerSolve InvertLayer(const RadialLayer& layer, const UnitVector3& target, double tol,
                       int max_iter) {
  constexpr int kMaxHalvings = 40;
  UnitVector3 x = target;
  LayerJacobian jac = layer_jacobian(layer, x);
  double residual = Separation(jac.y, target);
  int it = 0;
  while (residual > tol && it < max_iter) {
    ++it;
    const Vec3 w = log_map(jac.y, target).v;
    const auto& [f_a, f_b] = jac.output_basis;
    const double c_a = dot(f_a, w);
    const double c_b = dot(f_b, w);
    const double det = jac.determinant();
    if (!(std::abs(det) >= kDegenerateDeterminant)) break;
    const double d_a = (jac.m[1][1] * c_a - jac.m[0][1] * c_b) / det;
    const double d_b = (jac.m[0][0] * c_b - jac.m[1][0] * c_a) / det;
    const auto& [e_a, e_b] = jac.input_basis;
    const Vec3 step = d_a * e_a + d_b * e_b;

    double damping = 1.0;
    bool improved = false;
    for (int h = 0; h < kMaxHalvings; ++h, damping *= 0.5) {
      const UnitVector3 trial = exp_map(x, {x, damping * step});
      const double r = Separation(ApplyLayer(layer, trial), target);
      if (r < residual) {
        x = trial;
        improved = true;
        break;
      }
    }
    if (!improved) break;
    jac = layer_jacobian(layer, x);
    residual = Separation(jac.y, target);
  }
  return {x, residual, it};
}

}  // namespace

UnitVector3 stack_inverse(const FlowStack& stack, const UnitVector3& z, double tol, int max_iter) {
  if (stack.empty()) return z;
  const double layer_tol =
      std::max(tol / (10.0 * static_cast<double>(stack.size())), 1e-15);
  UnitVector3 x = z;
  int total_iterations = 0;
  for (std::size_t k = stack.size(); k-- > 0;) {
    const LayerSolve solve = InvertLayer(stack[k], x, layer_tol, max_iter);
    total_iterations += solve.iterations;
    x = solve.x;
    if (solve.residual > tol) {
      throw NoConvergence(total_iterations, solve.residual, "layer " + std::to_string(k + 1));
    }
  }
  const double residual = Separation(stack_forward(stack, x).z, z);
  if (residual > tol) throw NoConvergence(total_iterations, residual, "composed map");
  return x;
}

}  // namespace sphereflow
