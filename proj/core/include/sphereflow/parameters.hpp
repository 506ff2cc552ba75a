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

#ifndef SPHEREFLOW_PARAMETERS_HPP
#define SPHEREFLOW_PARAMETERS_HPP

#include <cstddef>
#include <span>
#include <vector>

#include "sphereflow/radial_flow.hpp"
#include "sphereflow/vec3.hpp"

namespace sphereflow {

/// Floor added to softplus so beta stays strictly positive.
inline constexpr double kBetaFloor = 1e-4;
/// Smallest admissible |u_raw|; shorter vectors are rescaled to unit length.
inline constexpr double kMinAnchorNorm = 1e-6;

/// Raw (unconstrained) parameters of one radial component.
struct RawComponent {
  double b_raw = 0.0;          ///< beta = softplus(b_raw) + 1e-4
  Vec3 u_raw{0.0, 0.0, 1.0};   ///< anchor = u_raw / |u_raw|
  double a_raw = 0.0;          ///< eta = softmax(a_raw) within the layer
};

/// Unconstrained parametrization of a FlowStack. Flattened order is layer
/// by layer, component by component: b_raw, u_raw[0..2], a_raw.
class UnconstrainedParams {
 public:
  static constexpr std::size_t kPerComponent = 5;

  UnconstrainedParams() = default;
  /// All layers must have the same p >= 1. Anchor vectors shorter than
  /// 1e-6 are renormalized.
  explicit UnconstrainedParams(std::vector<std::vector<RawComponent>> layers);
  /// Rebuilds from a flat vector of size K * p * 5.
  UnconstrainedParams(std::size_t layers, std::size_t components, std::span<const double> flat);

  std::size_t layers() const noexcept { return layers_.size(); }
  std::size_t components() const noexcept { return layers_.empty() ? 0 : layers_[0].size(); }
  std::size_t size() const noexcept { return layers() * components() * kPerComponent; }

  const RawComponent& at(std::size_t layer, std::size_t component) const {
    return layers_[layer][component];
  }
  const std::vector<std::vector<RawComponent>>& raw() const noexcept { return layers_; }

  std::vector<double> flatten() const;

 private:
  void EnforceAnchorNorms();

  std::vector<std::vector<RawComponent>> layers_;
};

/// Maps raw parameters onto a valid FlowStack (softplus + floor, normalize, softmax).
FlowStack constrain(const UnconstrainedParams& raw);

/// Right inverse of constrain: constrain(unconstrain(s)) reproduces s. The
/// softmax logits are returned as log(eta) (softmax is shift invariant) and
/// anchors as unit vectors. Requires beta > 1e-4.
UnconstrainedParams unconstrain(const FlowStack& stack);

double softplus(double x);
double inverse_softplus(double y);

}  // namespace sphereflow

#endif  // SPHEREFLOW_PARAMETERS_HPP
