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

#ifndef SPHEREFLOW_INTENSITY_HPP
#define SPHEREFLOW_INTENSITY_HPP

#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <vector>

#include "sphereflow/geometry.hpp"
#include "sphereflow/parameters.hpp"
#include "sphereflow/radial_flow.hpp"

namespace sphereflow {

/// log(4 pi): the uniform reference density on S^2 is exp(-kLogSphereArea).
inline constexpr double kLogSphereArea = 2.5310242469692907;

/// A fitted intensity: scale * (process density). When `committee` is
/// non-empty the process density is the mean of the member densities and
/// `stack` holds the first member.
struct IntensityEstimate {
  FlowStack stack;
  double scale = 0.0;
  std::vector<FlowStack> committee;
};

struct FitConfig {
  static constexpr std::size_t kFullBatch = std::numeric_limits<std::size_t>::max();

  std::size_t layers = 20;    ///< K
  std::size_t components = 1; ///< p
  double step_size = 0.05;
  double moment_decay = 0.9;          ///< Adam beta_1
  double second_moment_decay = 0.999; ///< Adam beta_2
  double epsilon = 1e-8;
  int iterations = 500;
  /// Unset: full batch when n <= 5000, else 1024. kFullBatch forces full batch.
  std::optional<std::size_t> minibatch;
  std::uint64_t seed = 20220101;
  double init_spread = 1.0;

  /// Throws std::invalid_argument on violated positivity constraints.
  void validate() const;
};

struct TraceEntry {
  int iteration = 0;
  double objective = 0.0;
  double best = 0.0;
};

struct FitResult {
  IntensityEstimate estimate;
  UnconstrainedParams params;
  std::vector<TraceEntry> trace;
};

double process_log_density(const FlowStack& stack, const UnitVector3& x);
double process_log_density(const IntensityEstimate& est, const UnitVector3& x);

/// scale * exp(process_log_density).
double intensity(const IntensityEstimate& est, const UnitVector3& x);

/// Sum of process log densities over the points (0 for an empty list).
double log_likelihood(const FlowStack& stack, std::span<const UnitVector3> points);

struct LikelihoodGradient {
  double value = 0.0;
  /// d value / d raw, in UnconstrainedParams::flatten() order.
  std::vector<double> gradient;
};

/// log_likelihood(constrain(raw), points) and its exact gradient with respect
/// to every raw scalar, by reverse-mode differentiation.
LikelihoodGradient grad_log_likelihood(const UnconstrainedParams& raw,
                                       std::span<const UnitVector3> points);

/// Random starting point: u_raw ~ N(0, I), b_raw ~ N(0, init_spread^2), a_raw = 0.
UnconstrainedParams initial_params(const FitConfig& config);

/// Adam gradient ascent on the log likelihood; returns the best iterate.
/// Throws FitDiverged when the objective stops being finite.
FitResult fit(std::span<const UnitVector3> points, const FitConfig& config);

/// Fits `members` models with seeds seed, seed + 1, ... and averages their
/// densities. Diverged members are dropped; CommitteeFailed if all diverge.
IntensityEstimate committee_fit(std::span<const UnitVector3> points, const FitConfig& config,
                                int members, unsigned jobs = 1);

}  // namespace sphereflow

#endif  // SPHEREFLOW_INTENSITY_HPP
