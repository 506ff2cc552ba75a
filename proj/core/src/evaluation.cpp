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

#include "sphereflow/evaluation.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "sphereflow/error.hpp"

namespace sphereflow {
namespace {

// Neumaier summation; keeps grid integrals independent of summation order
// to well below the quadrature error.
class CompensatedSum {
 public:
  void add(double x) {
    const double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x)) {
      carry_ += (sum_ - t) + x;
    } else {
      carry_ += (x - t) + sum_;
    }
    sum_ = t;
  }
  double value() const { return sum_ + carry_; }

 private:
  double sum_ = 0.0;
  double carry_ = 0.0;
};

}  // namespace

SphereGrid::SphereGrid(std::size_t nodes) {
  if (nodes == 0) throw std::invalid_argument("SphereGrid: needs at least one node");
  const double golden_conjugate = (std::sqrt(5.0) - 1.0) / 2.0;
  const double n = static_cast<double>(nodes);
  nodes_.reserve(nodes);
  for (std::size_t k = 0; k < nodes; ++k) {
    const double kd = static_cast<double>(k);
    const double z = 1.0 - (2.0 * kd + 1.0) / n;
    // Fractional part first keeps the angle accurate for large k.
    const double turns = kd * golden_conjugate - std::floor(kd * golden_conjugate);
    const double lon = 2.0 * std::numbers::pi * turns;
    const double rho = std::sqrt(std::max(0.0, 1.0 - z * z));
    nodes_.emplace_back(rho * std::cos(lon), rho * std::sin(lon), z);
  }
}

SphereGrid build_grid(std::size_t nodes) { return SphereGrid(nodes); }

std::vector<double> evaluate_on_grid(const SphereGrid& grid, const SphereFunction& f) {
  std::vector<double> values;
  values.reserve(grid.size());
  for (const auto& x : grid.nodes()) values.push_back(f(x));
  return values;
}

double integrate(const SphereGrid& grid, std::span<const double> values) {
  if (values.size() != grid.size()) {
    throw std::invalid_argument("integrate: value count does not match the grid");
  }
  CompensatedSum sum;
  for (std::size_t k = 0; k < values.size(); ++k) {
    if (!std::isfinite(values[k])) throw NonFiniteValue(k);
    sum.add(values[k]);
  }
  return grid.weight() * sum.value();
}

double integrate(const SphereGrid& grid, const SphereFunction& f) {
  const std::vector<double> values = evaluate_on_grid(grid, f);
  return integrate(grid, values);
}

double l1_distance(const SphereGrid& grid, std::span<const double> a, std::span<const double> b) {
  if (a.size() != grid.size() || b.size() != grid.size()) {
    throw std::invalid_argument("l1_distance: value count does not match the grid");
  }
  std::vector<double> diff(a.size());
  for (std::size_t k = 0; k < a.size(); ++k) {
    if (!std::isfinite(a[k]) || !std::isfinite(b[k])) throw NonFiniteValue(k);
    diff[k] = std::abs(a[k] - b[k]);
  }
  return integrate(grid, diff);
}

double l1_distance(const SphereGrid& grid, const SphereFunction& a, const SphereFunction& b) {
  return l1_distance(grid, evaluate_on_grid(grid, a), evaluate_on_grid(grid, b));
}

}  // namespace sphereflow
