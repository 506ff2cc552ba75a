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

#include "sphereflow/bootstrap.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <stdexcept>

#include "sphereflow/detail/parallel.hpp"
#include "sphereflow/error.hpp"

namespace sphereflow {

BootstrapDraws draw_resamples(std::span<const UnitVector3> points, int replicates, Rng& rng) {
  if (points.empty()) throw std::invalid_argument("run_bootstrap: needs at least one point");
  if (replicates < 1) throw std::invalid_argument("run_bootstrap: needs B >= 1");
  const std::size_t B = static_cast<std::size_t>(replicates);
  const double n = static_cast<double>(points.size());

  BootstrapDraws draws;
  draws.samples.resize(B);
  draws.seeds.resize(B);
  std::uniform_int_distribution<std::size_t> pick(0, points.size() - 1);
  for (std::size_t b = 0; b < B; ++b) {
    std::size_t nb = 0;
    while (nb == 0) nb = static_cast<std::size_t>(SamplePoisson(rng, n));
    draws.samples[b].reserve(nb);
    for (std::size_t i = 0; i < nb; ++i) draws.samples[b].push_back(points[pick(rng)]);
    draws.seeds[b] = rng();
  }
  return draws;
}

BootstrapResult run_bootstrap(std::span<const UnitVector3> points, const FitConfig& config,
                              int replicates, Rng& rng, unsigned jobs) {
  config.validate();
  // Drawn up front in replicate order so the result does not depend on how
  // the fits are scheduled.
  const BootstrapDraws draws = draw_resamples(points, replicates, rng);
  const std::size_t B = draws.samples.size();
  const auto& samples = draws.samples;
  const auto& seeds = draws.seeds;

  std::vector<std::optional<IntensityEstimate>> fits(B);
  std::vector<std::uint64_t> used(seeds);
  detail::ParallelFor(B, jobs, [&](std::size_t b) {
    FitConfig replicate = config;
    for (int attempt = 0; attempt < 2; ++attempt) {
      replicate.seed = attempt == 0 ? seeds[b] : DeriveSeed(seeds[b], 1);
      try {
        IntensityEstimate est = fit(samples[b], replicate).estimate;
        est.scale = static_cast<double>(samples[b].size());
        fits[b] = std::move(est);
        used[b] = replicate.seed;
        return;
      } catch (const FitDiverged&) {
      }
    }
  });

  BootstrapResult result;
  result.requested = B;
  for (std::size_t b = 0; b < B; ++b) {
    if (!fits[b]) {
      result.failed.push_back(b);
      continue;
    }
    result.replicates.push_back(std::move(*fits[b]));
    result.seeds.push_back(used[b]);
    result.counts.push_back(samples[b].size());
  }
  return result;
}

double quantile_type7(std::vector<double> values, double q) {
  if (values.empty()) throw std::invalid_argument("quantile_type7: no values");
  if (!(q >= 0.0 && q <= 1.0)) throw std::invalid_argument("quantile_type7: q outside [0, 1]");
  std::sort(values.begin(), values.end());
  const double h = q * static_cast<double>(values.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(h));
  const std::size_t hi = std::min(lo + 1, values.size() - 1);
  return values[lo] + (h - static_cast<double>(lo)) * (values[hi] - values[lo]);
}

std::vector<std::vector<double>> percentile_bands(const BootstrapResult& result,
                                                  const SphereGrid& grid,
                                                  std::span<const double> qs) {
  if (result.replicates.empty()) throw std::invalid_argument("percentile_band: empty bootstrap");
  std::vector<std::vector<double>> values;
  values.reserve(result.replicates.size());
  for (const auto& est : result.replicates) {
    values.push_back(evaluate_on_grid(grid, [&](const UnitVector3& x) { return intensity(est, x); }));
  }
  std::vector<std::vector<double>> bands(qs.size(), std::vector<double>(grid.size()));
  std::vector<double> column(values.size());
  for (std::size_t k = 0; k < grid.size(); ++k) {
    for (std::size_t b = 0; b < values.size(); ++b) column[b] = values[b][k];
    std::sort(column.begin(), column.end());
    for (std::size_t j = 0; j < qs.size(); ++j) bands[j][k] = quantile_type7(column, qs[j]);
  }
  return bands;
}

std::vector<double> percentile_band(const BootstrapResult& result, const SphereGrid& grid,
                                    double q) {
  const double qs[] = {q};
  return std::move(percentile_bands(result, grid, qs).front());
}

}  // namespace sphereflow
