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

#ifndef SPHEREFLOW_HURDAT2_HPP
#define SPHEREFLOW_HURDAT2_HPP

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "sphereflow/geometry.hpp"

namespace sphereflow {

inline constexpr int kMissing = -999;

/// One six-hourly best-track entry. Wind radii columns are not retained.
struct TrackRecord {
  int date = 0;          ///< YYYYMMDD
  int time = 0;          ///< HHMM
  char record_id = ' ';  ///< ' ' when blank
  std::string status;    ///< two-letter system status
  GeoCoordinate position;
  int max_wind = kMissing;      ///< knots
  int min_pressure = kMissing;  ///< millibars

  friend bool operator==(const TrackRecord&, const TrackRecord&) = default;
};

struct StormTrack {
  std::string id;  ///< basin + number + year, e.g. EP011949
  std::string name;
  std::vector<TrackRecord> records;

  friend bool operator==(const StormTrack&, const StormTrack&) = default;
};

/// Strict HURDAT2 parser. Throws ParseError(line, reason) on malformed input
/// and CountMismatch when a header's entry count disagrees with its data.
std::vector<StormTrack> parse_hurdat2(std::string_view text);
std::vector<StormTrack> parse_hurdat2(std::istream& in);

/// Writes tracks back in NHC column layout (one decimal for positions).
std::string write_hurdat2(const std::vector<StormTrack>& tracks);

/// Location of the last record of each track, in file order. Throws EmptyTrack.
std::vector<UnitVector3> end_locations(const std::vector<StormTrack>& tracks);

}  // namespace sphereflow

#endif  // SPHEREFLOW_HURDAT2_HPP
