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

#include "sphereflow/simulation.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "sphereflow/error.hpp"
#include "sphereflow/radial_flow.hpp"

namespace sphereflow {

SimulationScenario::SimulationScenario(double expected_count,
                                       std::vector<ScenarioComponent> components)
    : expected_count_(expected_count), components_(std::move(components)) {
  if (!(expected_count_ > 0.0) || !std::isfinite(expected_count_)) {
    throw std::invalid_argument("SimulationScenario: expected count must be positive");
  }
  if (components_.empty()) throw std::invalid_argument("SimulationScenario: no components");
  double total = 0.0;
  for (const auto& c : components_) {
    if (!(c.weight >= 0.0)) throw std::invalid_argument("SimulationScenario: negative weight");
    if (const auto* v = std::get_if<VonMisesFisher>(&c.kind); v && !(v->kappa > 0.0)) {
      throw std::invalid_argument("SimulationScenario: kappa must be positive");
    }
    total += c.weight;
  }
  if (std::abs(total - 1.0) > 1e-12) {
    throw std::invalid_argument("SimulationScenario: weights must sum to 1");
  }
}

SimulationScenario scenario_preset(std::string_view name, double expected_count) {
  const UnitVector3 ex(1.0, 0.0, 0.0);
  const UnitVector3 ey(0.0, 1.0, 0.0);
  const UnitVector3 ez(0.0, 0.0, 1.0);
  constexpr double kappa = 100.0;
  if (name == "lambda1") return {expected_count, {{1.0, UniformComponent{}}}};
  if (name == "lambda2") return {expected_count, {{1.0, VonMisesFisher{ez, kappa}}}};
  if (name == "lambda3") {
    return {expected_count, {{0.5, VonMisesFisher{ey, kappa}}, {0.5, VonMisesFisher{ez, kappa}}}};
  }
  if (name == "lambda4") {
    constexpr double third = 1.0 / 3.0;
    return {expected_count,
            {{third, VonMisesFisher{ex, kappa}},
             {third, VonMisesFisher{ey, kappa}},
             {1.0 - 2.0 * third, VonMisesFisher{ez, kappa}}}};
  }
  throw std::invalid_argument("scenario_preset: unknown scenario '" + std::string(name) + "'");
}

std::vector<std::string> scenario_preset_names() {
  return {"lambda1", "lambda2", "lambda3", "lambda4"};
}

double vmf_log_density(const UnitVector3& x, const UnitVector3& mode, double kappa) {
  // 4 pi sinh(k) = 2 pi e^k (1 - e^-2k)
  return std::log(kappa) - std::log(2.0 * std::numbers::pi) - std::log1p(-std::exp(-2.0 * kappa)) +
         kappa * (dot(mode.vec(), x.vec()) - 1.0);
}

double scenario_density(const SimulationScenario& s, const UnitVector3& x) {
  double density = 0.0;
  for (const auto& c : s.components()) {
    if (std::holds_alternative<UniformComponent>(c.kind)) {
      density += c.weight / (4.0 * std::numbers::pi);
    } else {
      const auto& v = std::get<VonMisesFisher>(c.kind);
      density += c.weight * std::exp(vmf_log_density(x, v.mode, v.kappa));
    }
  }
  return s.expected_count() * density;
}

namespace {

UnitVector3 DrawUniform(Rng& rng) {
  for (;;) {
    const Vec3 g = StandardNormal3(rng);
    if (dot(g, g) > 1e-300) return UnitVector3(g);
  }
}

UnitVector3 DrawVmf(Rng& rng, const UnitVector3& mode, const std::pair<Vec3, Vec3>& frame,
                    double kappa) {
  const double u = UniformOpen(rng);
  // w = 1 + log(u + (1 - u) e^{-2k}) / k, written to stay accurate as k -> 0.
  double w = 1.0 + std::log1p((1.0 - u) * std::expm1(-2.0 * kappa)) / kappa;
  w = std::clamp(w, -1.0, 1.0);
  const double angle = 2.0 * std::numbers::pi * UniformOpen(rng);
  const double radial = std::sqrt(std::max(0.0, 1.0 - w * w));
  const auto& [a, b] = frame;
  return UnitVector3(w * mode.vec() + (radial * std::cos(angle)) * a + (radial * std::sin(angle)) * b);
}

}  // namespace

std::vector<UnitVector3> sample_uniform_sphere(Rng& rng, std::size_t count) {
  std::vector<UnitVector3> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) out.push_back(DrawUniform(rng));
  return out;
}

std::vector<UnitVector3> sample_vmf(Rng& rng, const UnitVector3& mode, double kappa,
                                    std::size_t count) {
  if (!(kappa > 0.0)) throw std::invalid_argument("sample_vmf: kappa must be positive");
  const auto frame = tangent_basis(mode);
  std::vector<UnitVector3> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) out.push_back(DrawVmf(rng, mode, frame, kappa));
  return out;
}

LabeledPoints simulate_scenario_labeled(const SimulationScenario& s, Rng& rng) {
  const auto n = static_cast<std::size_t>(SamplePoisson(rng, s.expected_count()));
  return sample_scenario_labeled(s, rng, n);
}

LabeledPoints sample_scenario_labeled(const SimulationScenario& s, Rng& rng, std::size_t n) {
  const auto& comps = s.components();
  std::vector<std::pair<Vec3, Vec3>> frames;
  frames.reserve(comps.size());
  for (const auto& c : comps) {
    const auto* v = std::get_if<VonMisesFisher>(&c.kind);
    frames.push_back(v ? tangent_basis(v->mode) : std::pair<Vec3, Vec3>{});
  }
  LabeledPoints out;
  out.points.reserve(n);
  out.component.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t j = 0;
    if (comps.size() > 1) {
      const double u = UniformOpen(rng);
      double cdf = 0.0;
      for (j = 0; j + 1 < comps.size(); ++j) {
        cdf += comps[j].weight;
        if (u < cdf) break;
      }
    }
    if (const auto* v = std::get_if<VonMisesFisher>(&comps[j].kind)) {
      out.points.push_back(DrawVmf(rng, v->mode, frames[j], v->kappa));
    } else {
      out.points.push_back(DrawUniform(rng));
    }
    out.component.push_back(j);
  }
  return out;
}

std::vector<UnitVector3> simulate_scenario(const SimulationScenario& s, Rng& rng) {
  return simulate_scenario_labeled(s, rng).points;
}

std::vector<UnitVector3> sample_scenario(const SimulationScenario& s, Rng& rng, std::size_t count) {
  return sample_scenario_labeled(s, rng, count).points;
}

std::vector<UnitVector3> sample_from_fitted(const IntensityEstimate& est, Rng& rng,
                                            std::size_t count, double tol, int max_iter) {
  std::vector<UnitVector3> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    const FlowStack* stack = &est.stack;
    if (!est.committee.empty()) {
      std::uniform_int_distribution<std::size_t> pick(0, est.committee.size() - 1);
      stack = &est.committee[pick(rng)];
    }
    const UnitVector3 z = DrawUniform(rng);
    try {
      out.push_back(stack_inverse(*stack, z, tol, max_iter));
    } catch (const NoConvergence& e) {
      throw NoConvergence(e.iterations(), e.residual(), "sample_from_fitted draw " + std::to_string(i));
    }
  }
  return out;
}

}  // namespace sphereflow
