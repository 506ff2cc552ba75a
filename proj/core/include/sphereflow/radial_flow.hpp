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

#ifndef SPHEREFLOW_RADIAL_FLOW_HPP
#define SPHEREFLOW_RADIAL_FLOW_HPP

#include <array>
#include <cstddef>
#include <span>
#include <vector>

#include "sphereflow/geometry.hpp"

namespace sphereflow {

/// One bump of the radial potential: (eta / beta) exp(beta (cos d(x, anchor) - 1)).
struct RadialComponent {
  double beta = 1.0;
  UnitVector3 anchor;
  double eta = 1.0;
};

/// A radial potential with p >= 1 components. Invariants (checked at
/// construction, std::invalid_argument on violation): beta > 0, eta > 0,
/// sum(eta) = 1 within 1e-10.
class RadialLayer {
 public:
  explicit RadialLayer(std::vector<RadialComponent> components);

  std::size_t size() const noexcept { return components_.size(); }
  const RadialComponent& operator[](std::size_t i) const { return components_[i]; }
  const std::vector<RadialComponent>& components() const noexcept { return components_; }

  double beta(std::size_t i) const { return components_[i].beta; }
  double eta(std::size_t i) const { return components_[i].eta; }
  const Vec3& anchor(std::size_t i) const { return components_[i].anchor.vec(); }

 private:
  std::vector<RadialComponent> components_;
};

/// Composition of K radial layers applied in order; K = 0 is the identity.
class FlowStack {
 public:
  FlowStack() = default;
  explicit FlowStack(std::vector<RadialLayer> layers) : layers_(std::move(layers)) {}

  std::size_t size() const noexcept { return layers_.size(); }
  bool empty() const noexcept { return layers_.empty(); }
  const RadialLayer& operator[](std::size_t k) const { return layers_[k]; }
  const std::vector<RadialLayer>& layers() const noexcept { return layers_; }

 private:
  std::vector<RadialLayer> layers_;
};

double potential(const RadialLayer& layer, const UnitVector3& x);

/// Gradient of the potential within the tangent plane at x.
TangentVector3 riemannian_gradient(const RadialLayer& layer, const UnitVector3& x);

struct LayerResult {
  UnitVector3 y;
  double log_det = 0.0;
};

/// The 2x2 tangent-plane Jacobian m[a][b] = f_a . dG(e_b), where (e_a, e_b)
/// and (f_a, f_b) are tangent_basis(x) and tangent_basis(y).
struct LayerJacobian {
  UnitVector3 y;
  std::pair<Vec3, Vec3> input_basis;
  std::pair<Vec3, Vec3> output_basis;
  std::array<std::array<double, 2>, 2> m{};

  double determinant() const { return m[0][0] * m[1][1] - m[0][1] * m[1][0]; }
};

LayerJacobian layer_jacobian(const RadialLayer& layer, const UnitVector3& x);

/// y = exp_x(grad phi(x)) and log |det| of the tangent Jacobian.
/// Throws DegenerateJacobian when |det| < 1e-300.
LayerResult layer_forward(const RadialLayer& layer, const UnitVector3& x);

struct StackResult {
  UnitVector3 z;
  double total_log_det = 0.0;
};

StackResult stack_forward(const FlowStack& stack, const UnitVector3& x);

/// The points entering and leaving each layer: element 0 is x, element k is
/// the image after layer k (size K + 1).
std::vector<UnitVector3> stack_trajectory(const FlowStack& stack, const UnitVector3& x);

/// Solves stack_forward(stack, x).z = z for x, one layer at a time in
/// reverse order with a damped Newton iteration started at the layer's
/// target. `max_iter` bounds the iterations of each layer solve. Throws
/// NoConvergence if the final forward residual exceeds `tol`.
UnitVector3 stack_inverse(const FlowStack& stack, const UnitVector3& z, double tol = 1e-10,
                          int max_iter = 200);

}  // namespace sphereflow

#endif  // SPHEREFLOW_RADIAL_FLOW_HPP
