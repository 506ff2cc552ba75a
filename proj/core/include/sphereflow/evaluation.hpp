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

#ifndef SPHEREFLOW_EVALUATION_HPP
#define SPHEREFLOW_EVALUATION_HPP

#include <cstddef>
#include <functional>
#include <numbers>
#include <span>
#include <vector>

#include "sphereflow/geometry.hpp"

namespace sphereflow {

/// Any real function on the sphere (intensities, densities, test integrands).
using SphereFunction = std::function<double(const UnitVector3&)>;

/// Equal-weight quadrature nodes from a Fibonacci lattice.
class SphereGrid {
 public:
  /// Throws std::invalid_argument for N = 0.
  explicit SphereGrid(std::size_t nodes);

  std::size_t size() const noexcept { return nodes_.size(); }
  const std::vector<UnitVector3>& nodes() const noexcept { return nodes_; }
  const UnitVector3& operator[](std::size_t k) const { return nodes_[k]; }
  /// Steradians per node, 4 pi / N.
  double weight() const noexcept { return 4.0 * std::numbers::pi / static_cast<double>(size()); }

 private:
  std::vector<UnitVector3> nodes_;
};

/// Node k: z = 1 - (2k + 1) / N, longitude 2 pi k (golden-ratio conjugate).
SphereGrid build_grid(std::size_t nodes);

inline constexpr std::size_t kDefaultGridSize = 20000;

std::vector<double> evaluate_on_grid(const SphereGrid& grid, const SphereFunction& f);

/// weight * sum of node values (compensated). Throws NonFiniteValue.
double integrate(const SphereGrid& grid, std::span<const double> values);
double integrate(const SphereGrid& grid, const SphereFunction& f);

/// Integral of |a - b| over the sphere.
double l1_distance(const SphereGrid& grid, const SphereFunction& a, const SphereFunction& b);
double l1_distance(const SphereGrid& grid, std::span<const double> a, std::span<const double> b);

}  // namespace sphereflow

#endif  // SPHEREFLOW_EVALUATION_HPP
