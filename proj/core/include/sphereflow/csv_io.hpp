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

#ifndef SPHEREFLOW_CSV_IO_HPP
#define SPHEREFLOW_CSV_IO_HPP

#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "sphereflow/evaluation.hpp"
#include "sphereflow/geometry.hpp"
#include "sphereflow/intensity.hpp"

namespace sphereflow {

// All CSV output uses degrees with lon before lat, 17 significant digits.

/// Header `lon,lat` (plus `x,y,z` when with_xyz).
void write_points_csv(std::ostream& out, std::span<const UnitVector3> points, bool with_xyz = false);

/// Reads a point CSV with `lon` and `lat` columns; when `x,y,z` columns are
/// present they take precedence. Throws ParseError.
std::vector<UnitVector3> read_points_csv(std::istream& in);

/// Header `lon,lat,value`.
void write_grid_csv(std::ostream& out, const SphereGrid& grid, std::span<const double> values);

/// Column label for a quantile: 0.1 -> "q10", 0.025 -> "q2.5".
std::string quantile_label(double q);

/// Header `lon,lat,<q labels...>,estimate`.
void write_band_csv(std::ostream& out, const SphereGrid& grid, std::span<const double> qs,
                    const std::vector<std::vector<double>>& bands, std::span<const double> estimate);

/// Header `iteration,objective,best`.
void write_trace_csv(std::ostream& out, std::span<const TraceEntry> trace);

}  // namespace sphereflow

#endif  // SPHEREFLOW_CSV_IO_HPP
