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

#include "sphereflow/hurdat2.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <istream>
#include <iterator>
#include <sstream>

#include "sphereflow/error.hpp"

namespace sphereflow {
namespace {

std::string_view Trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

// Comma-separated fields, trimmed. A single trailing empty field (from the
// trailing comma NHC writes) is dropped.
std::vector<std::string_view> SplitFields(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  for (;;) {
    const std::size_t comma = line.find(',', start);
    if (comma == std::string_view::npos) {
      fields.push_back(Trim(line.substr(start)));
      break;
    }
    fields.push_back(Trim(line.substr(start, comma - start)));
    start = comma + 1;
  }
  if (fields.size() > 1 && fields.back().empty()) fields.pop_back();
  return fields;
}

bool AllDigits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

bool IsStormId(std::string_view s) {
  return s.size() == 8 && std::isupper(static_cast<unsigned char>(s[0])) &&
         std::isupper(static_cast<unsigned char>(s[1])) && AllDigits(s.substr(2));
}

int ParseInt(std::string_view s, std::size_t line, const char* what) {
  int value = 0;
  const char* first = s.data();
  const char* last = s.data() + s.size();
  if (!s.empty() && s.front() == '+') ++first;
  const auto [ptr, ec] = std::from_chars(first, last, value);
  if (s.empty() || ec != std::errc() || ptr != last) {
    throw ParseError(line, std::string("invalid ") + what + " '" + std::string(s) + "'");
  }
  return value;
}

double ParseHemisphere(std::string_view s, char positive, char negative, std::size_t line,
                       const char* what) {
  if (s.size() < 2) throw ParseError(line, std::string("invalid ") + what + " '" + std::string(s) + "'");
  const char h = s.back();
  if (h != positive && h != negative) {
    throw ParseError(line, std::string(what) + " '" + std::string(s) + "' lacks a " + positive +
                               "/" + negative + " hemisphere");
  }
  const std::string number(s.substr(0, s.size() - 1));
  std::size_t used = 0;
  double value = 0.0;
  try {
    value = std::stod(number, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != number.size() || number.empty() || !(value >= 0.0) ||
      !std::isdigit(static_cast<unsigned char>(number.front()))) {
    throw ParseError(line, std::string("invalid ") + what + " '" + std::string(s) + "'");
  }
  return h == positive ? value : -value;
}

bool ValidDate(int yyyymmdd) {
  const int y = yyyymmdd / 10000;
  const int m = (yyyymmdd / 100) % 100;
  const int d = yyyymmdd % 100;
  if (m < 1 || m > 12 || d < 1) return false;
  static constexpr int kDays[] = {31, 28, 31, 30, 31, 30, 31, 31, 30, 31, 30, 31};
  const bool leap = (y % 4 == 0 && y % 100 != 0) || y % 400 == 0;
  return d <= kDays[m - 1] + ((m == 2 && leap) ? 1 : 0);
}

TrackRecord ParseRecord(const std::vector<std::string_view>& f, std::size_t line) {
  if (f.size() < 8) throw ParseError(line, "data line has fewer than 8 fields");
  TrackRecord r;
  if (f[0].size() != 8 || !AllDigits(f[0])) throw ParseError(line, "date must be YYYYMMDD");
  r.date = ParseInt(f[0], line, "date");
  if (!ValidDate(r.date)) throw ParseError(line, "invalid calendar date '" + std::string(f[0]) + "'");
  if (f[1].size() != 4 || !AllDigits(f[1])) throw ParseError(line, "time must be HHMM");
  r.time = ParseInt(f[1], line, "time");
  if (r.time / 100 > 23 || r.time % 100 > 59) {
    throw ParseError(line, "invalid time of day '" + std::string(f[1]) + "'");
  }
  if (f[2].size() > 1) throw ParseError(line, "record identifier must be one character");
  r.record_id = f[2].empty() ? ' ' : f[2][0];
  if (f[3].size() != 2) throw ParseError(line, "status must be two characters");
  r.status = std::string(f[3]);
  const double lat = ParseHemisphere(f[4], 'N', 'S', line, "latitude");
  const double lon = ParseHemisphere(f[5], 'E', 'W', line, "longitude");
  if (lat < -90.0 || lat > 90.0) throw ParseError(line, "latitude out of range");
  if (lon < -360.0 || lon > 360.0) throw ParseError(line, "longitude out of range");
  r.position = GeoCoordinate(lat, lon);
  r.max_wind = ParseInt(f[6], line, "maximum wind");
  r.min_pressure = ParseInt(f[7], line, "minimum pressure");
  return r;
}

void FinishStorm(StormTrack& storm, std::size_t declared) {
  if (storm.records.size() != declared) {
    throw CountMismatch(storm.id, declared, storm.records.size());
  }
}

}  // namespace

std::vector<StormTrack> parse_hurdat2(std::string_view text) {
  std::vector<StormTrack> storms;
  std::size_t declared = 0;
  bool open = false;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (Trim(line).empty()) continue;

    const auto fields = SplitFields(line);
    if (IsStormId(fields[0])) {
      if (open) FinishStorm(storms.back(), declared);
      if (fields.size() != 3) throw ParseError(line_no, "header must have id, name and count");
      StormTrack storm;
      storm.id = std::string(fields[0]);
      storm.name = std::string(fields[1]);
      const int count = ParseInt(fields[2], line_no, "entry count");
      if (count < 0) throw ParseError(line_no, "negative entry count");
      declared = static_cast<std::size_t>(count);
      storms.push_back(std::move(storm));
      open = true;
      continue;
    }
    if (!AllDigits(fields[0])) {
      throw ParseError(line_no, "expected a storm header or data line");
    }
    if (!open) throw ParseError(line_no, "data line before any storm header");
    StormTrack& storm = storms.back();
    if (storm.records.size() == declared) {
      throw CountMismatch(storm.id, declared, declared + 1);
    }
    TrackRecord r = ParseRecord(fields, line_no);
    if (!storm.records.empty()) {
      const auto& prev = storm.records.back();
      if (r.date < prev.date || (r.date == prev.date && r.time < prev.time)) {
        throw ParseError(line_no, "records of " + storm.id + " are not in chronological order");
      }
    }
    storm.records.push_back(std::move(r));
  }
  if (open) FinishStorm(storms.back(), declared);
  return storms;
}

std::vector<StormTrack> parse_hurdat2(std::istream& in) {
  const std::string text(std::istreambuf_iterator<char>(in), {});
  return parse_hurdat2(std::string_view(text));
}

std::string write_hurdat2(const std::vector<StormTrack>& tracks) {
  std::string out;
  char buf[160];
  for (const auto& t : tracks) {
    std::snprintf(buf, sizeof buf, "%s, %18s, %6zu,\n", t.id.c_str(), t.name.c_str(),
                  t.records.size());
    out += buf;
    for (const auto& r : t.records) {
      const double lat = r.position.lat();
      const double lon = r.position.lon();
      std::snprintf(buf, sizeof buf, "%08d, %04d, %c, %2s, %4.1f%c, %5.1f%c, %3d, %4d,\n", r.date,
                    r.time, r.record_id, r.status.c_str(), std::abs(lat), lat < 0.0 ? 'S' : 'N',
                    std::abs(lon), lon < 0.0 ? 'W' : 'E', r.max_wind, r.min_pressure);
      out += buf;
    }
  }
  return out;
}

std::vector<UnitVector3> end_locations(const std::vector<StormTrack>& tracks) {
  std::vector<UnitVector3> out;
  out.reserve(tracks.size());
  for (const auto& t : tracks) {
    if (t.records.empty()) throw EmptyTrack(t.id);
    out.push_back(geo_to_unit(t.records.back().position));
  }
  return out;
}

}  // namespace sphereflow
