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

#include "sphereflow/parameters.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace sphereflow {

UnconstrainedParams::UnconstrainedParams(std::vector<std::vector<RawComponent>> layers)
    : layers_(std::move(layers)) {
  for (const auto& l : layers_) {
    if (l.empty() || l.size() != layers_[0].size()) {
      throw std::invalid_argument("UnconstrainedParams: every layer needs the same p >= 1");
    }
  }
  EnforceAnchorNorms();
}

UnconstrainedParams::UnconstrainedParams(std::size_t layers, std::size_t components,
                                         std::span<const double> flat) {
  if (flat.size() != layers * components * kPerComponent || (layers > 0 && components == 0)) {
    throw std::invalid_argument("UnconstrainedParams: flat vector has the wrong size");
  }
  layers_.assign(layers, std::vector<RawComponent>(components));
  std::size_t j = 0;
  for (auto& l : layers_) {
    for (auto& c : l) {
      c.b_raw = flat[j++];
      c.u_raw = {flat[j], flat[j + 1], flat[j + 2]};
      j += 3;
      c.a_raw = flat[j++];
    }
  }
  EnforceAnchorNorms();
}

void UnconstrainedParams::EnforceAnchorNorms() {
  for (auto& l : layers_) {
    for (auto& c : l) {
      const double n = norm(c.u_raw);
      if (!std::isfinite(n)) throw std::invalid_argument("UnconstrainedParams: non-finite anchor");
      if (n < kMinAnchorNorm) c.u_raw = n > 0.0 ? (1.0 / n) * c.u_raw : Vec3{0.0, 0.0, 1.0};
    }
  }
}

std::vector<double> UnconstrainedParams::flatten() const {
  std::vector<double> flat;
  flat.reserve(size());
  for (const auto& l : layers_) {
    for (const auto& c : l) {
      flat.push_back(c.b_raw);
      flat.insert(flat.end(), c.u_raw.begin(), c.u_raw.end());
      flat.push_back(c.a_raw);
    }
  }
  return flat;
}

double softplus(double x) { return std::max(x, 0.0) + std::log1p(std::exp(-std::abs(x))); }

double inverse_softplus(double y) {
  if (!(y > 0.0)) throw std::invalid_argument("inverse_softplus: argument must be positive");
  // log(exp(y) - 1), stable for large y.
  return y + std::log(-std::expm1(-y));
}

FlowStack constrain(const UnconstrainedParams& raw) {
  std::vector<RadialLayer> layers;
  layers.reserve(raw.layers());
  for (const auto& l : raw.raw()) {
    double a_max = l[0].a_raw;
    for (const auto& c : l) a_max = std::max(a_max, c.a_raw);
    double total = 0.0;
    for (const auto& c : l) total += std::exp(c.a_raw - a_max);
    std::vector<RadialComponent> comps;
    comps.reserve(l.size());
    for (const auto& c : l) {
      // Underflowed weights are kept at the smallest normal double so the
      // layer stays valid; their contribution is nil either way.
      const double eta = std::max(std::exp(c.a_raw - a_max) / total, std::numeric_limits<double>::min());
      comps.push_back({softplus(c.b_raw) + kBetaFloor, UnitVector3(c.u_raw), eta});
    }
    layers.emplace_back(std::move(comps));
  }
  return FlowStack(std::move(layers));
}

UnconstrainedParams unconstrain(const FlowStack& stack) {
  std::vector<std::vector<RawComponent>> layers;
  layers.reserve(stack.size());
  for (const auto& layer : stack.layers()) {
    std::vector<RawComponent> comps;
    for (const auto& c : layer.components()) {
      comps.push_back({inverse_softplus(c.beta - kBetaFloor), c.anchor.vec(), std::log(c.eta)});
    }
    layers.push_back(std::move(comps));
  }
  return UnconstrainedParams(std::move(layers));
}

}  // namespace sphereflow
