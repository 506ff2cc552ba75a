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

#include <cstddef>
#include <vector>

#include <benchmark/benchmark.h>

#include "sphereflow/evaluation.hpp"
#include "sphereflow/intensity.hpp"
#include "sphereflow/parameters.hpp"
#include "sphereflow/radial_flow.hpp"
#include "sphereflow/random.hpp"
#include "sphereflow/simulation.hpp"

namespace sf = sphereflow;

namespace {

std::vector<sf::UnitVector3> UniformPoints(std::size_t n) {
  sf::Rng rng(1009);
  return sf::sample_uniform_sphere(rng, n);
}

sf::UnconstrainedParams Start(int layers, int components) {
  sf::FitConfig config;
  config.layers = layers;
  config.components = components;
  return sf::initial_params(config);
}

// Objective plus full gradient; the cyclone-scale case is n = 1049, K = 30.
void BM_ObjectiveGradient(benchmark::State& state) {
  const auto points = UniformPoints(static_cast<std::size_t>(state.range(0)));
  const auto raw = Start(static_cast<int>(state.range(1)), 1);
  for (auto _ : state) {
    auto g = sf::grad_log_likelihood(raw, points);
    benchmark::DoNotOptimize(g.value);
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_ObjectiveGradient)->Args({1049, 30})->Args({500, 20})->Args({500, 5})->Unit(benchmark::kMillisecond);

void BM_LogLikelihood(benchmark::State& state) {
  const auto points = UniformPoints(static_cast<std::size_t>(state.range(0)));
  const auto stack = sf::constrain(Start(static_cast<int>(state.range(1)), 1));
  for (auto _ : state) benchmark::DoNotOptimize(sf::log_likelihood(stack, points));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_LogLikelihood)->Args({1049, 30})->Unit(benchmark::kMillisecond);

void BM_StackInverse(benchmark::State& state) {
  const auto points = UniformPoints(256);
  const auto stack = sf::constrain(Start(static_cast<int>(state.range(0)), 1));
  std::size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(sf::stack_inverse(stack, points[i++ % points.size()]));
  }
}
BENCHMARK(BM_StackInverse)->Arg(5)->Arg(20);

void BM_GridIntegral(benchmark::State& state) {
  const sf::SphereGrid grid(static_cast<std::size_t>(state.range(0)));
  const auto stack = sf::constrain(Start(20, 1));
  const sf::IntensityEstimate est{stack, 500.0, {}};
  for (auto _ : state) {
    benchmark::DoNotOptimize(sf::integrate(grid, [&](const sf::UnitVector3& x) { return sf::intensity(est, x); }));
  }
}
BENCHMARK(BM_GridIntegral)->Arg(20000)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
