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

#ifndef SPHEREFLOW_SIMULATION_HPP
#define SPHEREFLOW_SIMULATION_HPP

#include <cstddef>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "sphereflow/geometry.hpp"
#include "sphereflow/intensity.hpp"
#include "sphereflow/random.hpp"

namespace sphereflow {

struct UniformComponent {};

struct VonMisesFisher {
  UnitVector3 mode;
  double kappa = 1.0;
};

struct ScenarioComponent {
  double weight = 1.0;
  std::variant<UniformComponent, VonMisesFisher> kind;
};

/// Intensity expected_count * sum_j weight_j f_j(x) for a mixture of uniform
/// and von Mises-Fisher densities. Weights must be >= 0 and sum to 1 within
/// 1e-12; kappa must be positive (std::invalid_argument otherwise).
class SimulationScenario {
 public:
  SimulationScenario(double expected_count, std::vector<ScenarioComponent> components);

  double expected_count() const noexcept { return expected_count_; }
  const std::vector<ScenarioComponent>& components() const noexcept { return components_; }

 private:
  double expected_count_;
  std::vector<ScenarioComponent> components_;
};

/// Named presets "lambda1" ... "lambda4" with the given expected count.
/// Throws std::invalid_argument for an unknown name.
SimulationScenario scenario_preset(std::string_view name, double expected_count = 500.0);
std::vector<std::string> scenario_preset_names();

/// log of kappa exp(kappa m.x) / (4 pi sinh kappa), evaluated without overflow.
double vmf_log_density(const UnitVector3& x, const UnitVector3& mode, double kappa);

/// Events per steradian at x.
double scenario_density(const SimulationScenario& s, const UnitVector3& x);

std::vector<UnitVector3> sample_uniform_sphere(Rng& rng, std::size_t count);

/// Exact inverse-CDF sampler for the cosine to the mode, with a uniform azimuth.
std::vector<UnitVector3> sample_vmf(Rng& rng, const UnitVector3& mode, double kappa,
                                    std::size_t count);

struct LabeledPoints {
  std::vector<UnitVector3> points;
  std::vector<std::size_t> component;  ///< mixture component each point came from
};

/// N ~ Poisson(expected_count) points, each drawn from a weight-chosen component.
LabeledPoints simulate_scenario_labeled(const SimulationScenario& s, Rng& rng);
std::vector<UnitVector3> simulate_scenario(const SimulationScenario& s, Rng& rng);

/// The process conditioned on N = count: count i.i.d. draws from the
/// normalized intensity.
LabeledPoints sample_scenario_labeled(const SimulationScenario& s, Rng& rng, std::size_t count);
std::vector<UnitVector3> sample_scenario(const SimulationScenario& s, Rng& rng, std::size_t count);

/// Uniform draws pulled back through stack_inverse. Committee estimates pick
/// a member uniformly per draw. NoConvergence names the failing draw.
std::vector<UnitVector3> sample_from_fitted(const IntensityEstimate& est, Rng& rng,
                                            std::size_t count, double tol = 1e-10,
                                            int max_iter = 200);

}  // namespace sphereflow

#endif  // SPHEREFLOW_SIMULATION_HPP
