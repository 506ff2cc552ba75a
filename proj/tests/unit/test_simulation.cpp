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

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include <gtest/gtest.h>

#include "sphereflow/evaluation.hpp"
#include "sphereflow/simulation.hpp"
#include "support/oracles.hpp"

namespace sphereflow {
namespace {

using std::numbers::pi;

// Upper 0.1% point of the chi-square distribution with 19 degrees of freedom.
constexpr double kChiSquare19At999 = 43.8202;

double FractionAbove(const std::vector<UnitVector3>& pts, const UnitVector3& axis) {
  std::size_t up = 0;
  for (const auto& p : pts) up += dot(p.vec(), axis.vec()) > 0.0;
  return static_cast<double>(up) / static_cast<double>(pts.size());
}

double VmfCapMass(double kappa, double radius) {
  return -std::expm1(-kappa * (1 - std::cos(radius))) / -std::expm1(-2 * kappa);
}

TEST(SimulationScenario, ValidatesInputs) {
  EXPECT_THROW(SimulationScenario(0.0, {{1.0, UniformComponent{}}}), std::invalid_argument);
  EXPECT_THROW(SimulationScenario(10.0, {{0.6, UniformComponent{}}}), std::invalid_argument);
  EXPECT_THROW(SimulationScenario(10.0, {{1.0, VonMisesFisher{{}, 0.0}}}), std::invalid_argument);
  EXPECT_THROW(SimulationScenario(10.0, {{-0.5, UniformComponent{}}, {1.5, UniformComponent{}}}),
               std::invalid_argument);
  EXPECT_THROW(scenario_preset("lambda9"), std::invalid_argument);
  EXPECT_EQ(scenario_preset_names().size(), 4u);
}

TEST(ScenarioDensity, KnownValues) {
  const auto l1 = scenario_preset("lambda1");
  EXPECT_NEAR(scenario_density(l1, {0.3, 0.4, 0.5}), 500 / (4 * pi), 1e-12);
  EXPECT_NEAR(scenario_density(l1, {0, 0, 1}), 39.789, 1e-3);
  const auto l2 = scenario_preset("lambda2");
  const double at_mode = 500.0 * 200.0 / (4 * pi * (1 - std::exp(-200.0)));
  EXPECT_NEAR(scenario_density(l2, {0, 0, 1}), at_mode, 1e-9);
  EXPECT_NEAR(scenario_density(l2, {0, 0, 1}), 7957.75, 1e-2);
}

TEST(ScenarioDensity, LogSpaceSurvivesLargeConcentration) {
  const UnitVector3 m(0, 0, 1);
  EXPECT_TRUE(std::isfinite(vmf_log_density(m, m, 5000.0)));
  EXPECT_NEAR(vmf_log_density(m, m, 5000.0), std::log(5000.0 / (2 * pi)), 1e-12);
  EXPECT_NEAR(std::exp(vmf_log_density({1, 0, 0}, m, 2.0)), 2 * std::exp(0.0) / (4 * pi * std::sinh(2.0)),
              1e-15);
}

TEST(ScenarioDensity, IntegratesToExpectedCount) {
  const SphereGrid grid(kDefaultGridSize);
  for (const auto& name : scenario_preset_names()) {
    const auto s = scenario_preset(name);
    const auto values = evaluate_on_grid(grid, [&](const UnitVector3& x) { return scenario_density(s, x); });
    for (double v : values) EXPECT_GE(v, 0.0);
    EXPECT_NEAR(integrate(grid, values), 500.0, 0.005 * 500.0) << name;
  }
}

TEST(SampleUniformSphere, MomentsAndHemispheres) {
  Rng rng(61);
  const auto pts = sample_uniform_sphere(rng, 100000);
  ASSERT_EQ(pts.size(), 100000u);
  double mean_z = 0.0;
  for (const auto& p : pts) {
    EXPECT_NEAR(norm(p.vec()), 1.0, 1e-12);
    mean_z += p.e3();
  }
  mean_z /= 100000.0;
  EXPECT_LT(std::abs(mean_z), 0.01);
  EXPECT_NEAR(FractionAbove(pts, {0, 0, 1}), 0.5, 0.005);
  EXPECT_TRUE(sample_uniform_sphere(rng, 0).empty());
}

TEST(SampleVmf, MeanResultantLength) {
  Rng rng(62);
  const UnitVector3 mode(0.3, -0.2, 0.9);
  const auto pts = sample_vmf(rng, mode, 100.0, 100000);
  double mean = 0.0;
  for (const auto& p : pts) {
    EXPECT_NEAR(norm(p.vec()), 1.0, 1e-12);
    mean += dot(p.vec(), mode.vec());
  }
  mean /= 100000.0;
  EXPECT_NEAR(mean, 1.0 / std::tanh(100.0) - 0.01, 0.001);
}

TEST(SampleVmf, TinyConcentrationIsUniform) {
  Rng rng(63);
  const UnitVector3 mode(1, 0, 0);
  EXPECT_NEAR(FractionAbove(sample_vmf(rng, mode, 1e-6, 100000), mode), 0.5, 0.005);
}

TEST(SampleVmf, ChiSquareOnLatitudeBands) {
  Rng rng(64);
  const UnitVector3 mode(0, 1, 0);
  const double kappa = 5.0;
  const std::size_t n = 100000;
  const auto pts = sample_vmf(rng, mode, kappa, n);
  // Bands equally spaced in angle from the mode; cap masses from the CDF of w.
  constexpr int kBands = 20;
  std::vector<double> observed(kBands, 0.0);
  for (const auto& p : pts) {
    const double theta = std::acos(std::clamp(dot(p.vec(), mode.vec()), -1.0, 1.0));
    observed[std::min(kBands - 1, static_cast<int>(theta / pi * kBands))] += 1.0;
  }
  double chi2 = 0.0;
  for (int b = 0; b < kBands; ++b) {
    const double mass = VmfCapMass(kappa, pi * (b + 1) / kBands) - VmfCapMass(kappa, pi * b / kBands);
    const double expected = mass * static_cast<double>(n);
    if (expected < 1e-9) continue;
    chi2 += (observed[b] - expected) * (observed[b] - expected) / expected;
  }
  EXPECT_LT(chi2, kChiSquare19At999);
}

TEST(SimulateScenario, PoissonCountMean) {
  Rng rng(65);
  const auto s = scenario_preset("lambda1");
  double total = 0.0;
  for (int i = 0; i < 1000; ++i) total += static_cast<double>(simulate_scenario(s, rng).size());
  EXPECT_NEAR(total / 1000.0, 500.0, 2.2);
}

TEST(SimulateScenario, SmallMeanUsesInversionBranch) {
  Rng rng(66);
  const SimulationScenario s(3.0, {{1.0, UniformComponent{}}});
  double total = 0.0, sq = 0.0;
  for (int i = 0; i < 20000; ++i) {
    const double k = static_cast<double>(simulate_scenario(s, rng).size());
    total += k;
    sq += k * k;
  }
  const double mean = total / 20000.0;
  EXPECT_NEAR(mean, 3.0, 3 * std::sqrt(3.0 / 20000.0));
  EXPECT_NEAR(sq / 20000.0 - mean * mean, 3.0, 0.15);
}

TEST(SimulateScenario, ComponentSplitForThreeModes) {
  Rng rng(67);
  const auto labeled = sample_scenario_labeled(scenario_preset("lambda4"), rng, 30000);
  std::array<double, 3> counts{};
  for (std::size_t c : labeled.component) counts.at(c) += 1.0;
  const double sd = std::sqrt(30000.0 * (1.0 / 3.0) * (2.0 / 3.0));
  for (double c : counts) EXPECT_NEAR(c, 10000.0, 3 * sd);
}

TEST(SimulateScenario, CapMassesMatchMixture) {
  Rng rng(68);
  const std::size_t n = 20000;
  const auto pts = sample_scenario(scenario_preset("lambda3"), rng, n);
  for (const UnitVector3 mode : {UnitVector3(0, 1, 0), UnitVector3(0, 0, 1)}) {
    std::size_t inside = 0;
    for (const auto& p : pts) inside += geodesic_distance(p, mode) < 0.3;
    const double mass = 0.5 * VmfCapMass(100.0, 0.3);
    const double sd = std::sqrt(static_cast<double>(n) * mass * (1 - mass));
    EXPECT_NEAR(static_cast<double>(inside), mass * static_cast<double>(n), 3 * sd);
  }
}

TEST(SimulateScenario, DeterministicGivenSeed) {
  const auto s = scenario_preset("lambda3");
  Rng a(69), b(69);
  EXPECT_EQ(simulate_scenario(s, a), simulate_scenario(s, b));
}

TEST(SampleFromFitted, EmptyStackBehavesLikeUniform) {
  Rng rng(70);
  const auto pts = sample_from_fitted(IntensityEstimate{FlowStack{}, 1.0, {}}, rng, 100000);
  EXPECT_NEAR(FractionAbove(pts, {0, 0, 1}), 0.5, 0.005);
  EXPECT_NEAR(FractionAbove(pts, {1, 0, 0}), 0.5, 0.005);
}

TEST(SampleFromFitted, CapFrequencyMatchesModelMass) {
  Rng data_rng(71);
  const auto data = sample_scenario(scenario_preset("lambda2"), data_rng, 300);
  FitConfig config;
  config.layers = 3;
  config.iterations = 80;
  const IntensityEstimate est = fit(data, config).estimate;

  const UnitVector3 mode(0, 0, 1);
  const SphereGrid grid(kDefaultGridSize);
  const double model_mass = integrate(grid, [&](const UnitVector3& x) {
    return geodesic_distance(x, mode) < 0.3 ? std::exp(process_log_density(est, x)) : 0.0;
  });
  Rng rng(72);
  const std::size_t n = 10000;
  const auto draws = sample_from_fitted(est, rng, n);
  std::size_t inside = 0;
  for (const auto& p : draws) inside += geodesic_distance(p, mode) < 0.3;
  const double sd = std::sqrt(model_mass * (1 - model_mass) / static_cast<double>(n));
  EXPECT_NEAR(static_cast<double>(inside) / static_cast<double>(n), model_mass, 3 * sd);

  Rng again(72);
  EXPECT_EQ(sample_from_fitted(est, again, n), draws);
}

}  // namespace
}  // namespace sphereflow
