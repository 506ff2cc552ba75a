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

#ifndef SPHEREFLOW_BOOTSTRAP_HPP
#define SPHEREFLOW_BOOTSTRAP_HPP

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "sphereflow/evaluation.hpp"
#include "sphereflow/intensity.hpp"
#include "sphereflow/random.hpp"

namespace sphereflow {

struct BootstrapResult {
  std::vector<IntensityEstimate> replicates;  ///< scale of replicate b is counts[b]
  std::vector<std::uint64_t> seeds;           ///< fit seed actually used per replicate
  std::vector<std::size_t> counts;            ///< n_b
  std::size_t requested = 0;                  ///< B as asked; replicates.size() is effective B
  std::vector<std::size_t> failed;            ///< replicate indices excluded after a retry

  std::size_t effective() const noexcept { return replicates.size(); }
};

/// Poisson-count nonparametric bootstrap: n_b ~ Poisson(n) (zero redrawn),
/// resample n_b points with replacement, single fit per replicate. Replicates
/// run on up to `jobs` threads; results do not depend on `jobs`.
/// Resampled point lists and fit seeds for B replicates, in replicate order.
/// Each n_b ~ Poisson(n), redrawn while zero.
struct BootstrapDraws {
  std::vector<std::vector<UnitVector3>> samples;
  std::vector<std::uint64_t> seeds;
};

BootstrapDraws draw_resamples(std::span<const UnitVector3> points, int replicates, Rng& rng);

BootstrapResult run_bootstrap(std::span<const UnitVector3> points, const FitConfig& config,
                              int replicates, Rng& rng, unsigned jobs = 1);

/// Type-7 (linear interpolation) empirical quantile; sorts `values`.
double quantile_type7(std::vector<double> values, double q);

/// Pointwise q-quantile of the replicate intensities at every grid node.
std::vector<double> percentile_band(const BootstrapResult& result, const SphereGrid& grid, double q);

/// Several quantiles at once; evaluates each replicate on the grid only once.
std::vector<std::vector<double>> percentile_bands(const BootstrapResult& result,
                                                  const SphereGrid& grid,
                                                  std::span<const double> qs);

}  // namespace sphereflow

#endif  // SPHEREFLOW_BOOTSTRAP_HPP
