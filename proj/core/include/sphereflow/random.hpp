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

#ifndef SPHEREFLOW_RANDOM_HPP
#define SPHEREFLOW_RANDOM_HPP

#include <cstdint>
#include <random>

#include "sphereflow/vec3.hpp"

namespace sphereflow {

/// All stochastic routines take an explicit engine so results are a pure
/// function of the seed.
using Rng = std::mt19937_64;

/// Uniform on the open interval (0, 1), built from the top 53 bits.
double UniformOpen(Rng& rng);

/// Three independent standard normals.
Vec3 StandardNormal3(Rng& rng);

/// Poisson variate: sequential inversion for mean <= 30, Hormann's PTRS
/// transformed rejection above.
std::uint64_t SamplePoisson(Rng& rng, double mean);

/// Independent seed for stream `stream` derived from `base` (splitmix64).
std::uint64_t DeriveSeed(std::uint64_t base, std::uint64_t stream);

}  // namespace sphereflow

#endif  // SPHEREFLOW_RANDOM_HPP
