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

#include "sphereflow/csv_io.hpp"

#include <cmath>
#include <cstdio>
#include <istream>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "sphereflow/error.hpp"

namespace sphereflow {
namespace {

std::string Num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string_view Trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

std::vector<std::string> Split(const std::string& line) {
  std::vector<std::string> out;
  std::stringstream ss(line);
  std::string cell;
  while (std::getline(ss, cell, ',')) out.emplace_back(Trim(cell));
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

double ParseNumber(const std::string& cell, std::size_t line) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(cell, &used);
  } catch (const std::exception&) {
    throw ParseError(line, "invalid number '" + cell + "'");
  }
  if (used != cell.size() || !std::isfinite(v)) throw ParseError(line, "invalid number '" + cell + "'");
  return v;
}

}  // namespace

void write_points_csv(std::ostream& out, std::span<const UnitVector3> points, bool with_xyz) {
  out << (with_xyz ? "lon,lat,x,y,z\n" : "lon,lat\n");
  for (const auto& p : points) {
    const GeoCoordinate g = unit_to_geo(p);
    out << Num(g.lon()) << ',' << Num(g.lat());
    if (with_xyz) out << ',' << Num(p.e1()) << ',' << Num(p.e2()) << ',' << Num(p.e3());
    out << '\n';
  }
}

std::vector<UnitVector3> read_points_csv(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!Trim(line).empty()) break;
  }
  if (Trim(line).empty()) throw ParseError(line_no, "missing CSV header");
  const auto header = Split(line);
  std::optional<std::size_t> lon, lat, x, y, z;
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (header[i] == "lon") lon = i;
    if (header[i] == "lat") lat = i;
    if (header[i] == "x") x = i;
    if (header[i] == "y") y = i;
    if (header[i] == "z") z = i;
  }
  const bool cartesian = x && y && z;
  if (!cartesian && !(lon && lat)) {
    throw ParseError(line_no, "point CSV needs lon,lat (or x,y,z) columns");
  }
  std::vector<UnitVector3> points;
  while (std::getline(in, line)) {
    ++line_no;
    if (Trim(line).empty()) continue;
    const auto cells = Split(line);
    if (cells.size() != header.size()) throw ParseError(line_no, "wrong number of columns");
    try {
      if (cartesian) {
        const Vec3 v{ParseNumber(cells[*x], line_no), ParseNumber(cells[*y], line_no),
                     ParseNumber(cells[*z], line_no)};
        // Keep coordinates written by write_points_csv bit-exact.
        if (std::abs(dot(v, v) - 1.0) < 1e-14) {
          points.push_back(UnitVector3::FromNormalized(v));
        } else {
          points.emplace_back(v);
        }
      } else {
        points.push_back(
            geo_to_unit(GeoCoordinate(ParseNumber(cells[*lat], line_no), ParseNumber(cells[*lon], line_no))));
      }
    } catch (const std::invalid_argument& e) {
      throw ParseError(line_no, e.what());
    }
  }
  return points;
}

void write_grid_csv(std::ostream& out, const SphereGrid& grid, std::span<const double> values) {
  if (values.size() != grid.size()) throw std::invalid_argument("write_grid_csv: size mismatch");
  out << "lon,lat,value\n";
  for (std::size_t k = 0; k < grid.size(); ++k) {
    const GeoCoordinate g = unit_to_geo(grid[k]);
    out << Num(g.lon()) << ',' << Num(g.lat()) << ',' << Num(values[k]) << '\n';
  }
}

std::string quantile_label(double q) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "q%.10g", q * 100.0);
  return buf;
}

void write_band_csv(std::ostream& out, const SphereGrid& grid, std::span<const double> qs,
                    const std::vector<std::vector<double>>& bands, std::span<const double> estimate) {
  if (bands.size() != qs.size() || estimate.size() != grid.size()) {
    throw std::invalid_argument("write_band_csv: size mismatch");
  }
  out << "lon,lat";
  for (double q : qs) out << ',' << quantile_label(q);
  out << ",estimate\n";
  for (std::size_t k = 0; k < grid.size(); ++k) {
    const GeoCoordinate g = unit_to_geo(grid[k]);
    out << Num(g.lon()) << ',' << Num(g.lat());
    for (const auto& band : bands) out << ',' << Num(band[k]);
    out << ',' << Num(estimate[k]) << '\n';
  }
}

void write_trace_csv(std::ostream& out, std::span<const TraceEntry> trace) {
  out << "iteration,objective,best\n";
  for (const auto& t : trace) out << t.iteration << ',' << Num(t.objective) << ',' << Num(t.best) << '\n';
}

}  // namespace sphereflow
