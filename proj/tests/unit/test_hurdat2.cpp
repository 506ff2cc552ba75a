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

#include <fstream>
#include <sstream>
#include <string>

#include <gtest/gtest.h>

#include "sphereflow/error.hpp"
#include "sphereflow/hurdat2.hpp"

namespace sphereflow {
namespace {

std::string ReadFixture(const std::string& name) {
  std::ifstream in(std::string(SPHEREFLOW_TEST_DATA_DIR) + "/" + name);
  if (!in) throw std::runtime_error("missing fixture " + name);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

TEST(ParseHurdat2, GoldenFixture) {
  const auto tracks = parse_hurdat2(ReadFixture("hurdat2_golden.txt"));
  ASSERT_EQ(tracks.size(), 2u);
  EXPECT_EQ(tracks[0].id, "EP011949");
  EXPECT_EQ(tracks[0].name, "UNNAMED");
  ASSERT_EQ(tracks[0].records.size(), 2u);
  ASSERT_EQ(tracks[1].records.size(), 3u);
  const TrackRecord& first = tracks[0].records[0];
  EXPECT_EQ(first.date, 19490611);
  EXPECT_EQ(first.time, 0);
  EXPECT_EQ(first.record_id, ' ');
  EXPECT_EQ(first.status, "TS");
  EXPECT_DOUBLE_EQ(first.position.lat(), 20.2);
  EXPECT_DOUBLE_EQ(first.position.lon(), -106.3);
  EXPECT_EQ(first.max_wind, 45);
  EXPECT_EQ(first.min_pressure, kMissing);
  const TrackRecord& south = tracks[1].records[0];
  EXPECT_DOUBLE_EQ(south.position.lat(), -12.0);
  EXPECT_DOUBLE_EQ(south.position.lon(), 179.5);
  EXPECT_EQ(tracks[1].records[1].record_id, 'L');
  EXPECT_EQ(tracks[1].records[1].min_pressure, 965);
  EXPECT_DOUBLE_EQ(tracks[1].records[2].position.lon(), -94.8);
}

TEST(ParseHurdat2, StreamOverloadAgrees) {
  std::istringstream in(ReadFixture("hurdat2_golden.txt"));
  EXPECT_EQ(parse_hurdat2(in), parse_hurdat2(ReadFixture("hurdat2_golden.txt")));
}

TEST(ParseHurdat2, DeclaredCountTooLarge) {
  try {
    parse_hurdat2(ReadFixture("hurdat2_count_mismatch.txt"));
    FAIL() << "expected CountMismatch";
  } catch (const CountMismatch& e) {
    EXPECT_EQ(e.storm_id(), "EP022015");
  }
}

TEST(ParseHurdat2, DeclaredCountTooSmall) {
  std::string text = ReadFixture("hurdat2_golden.txt");
  text.replace(text.find("UNNAMED,      2,"), 16, "UNNAMED,      1,");
  EXPECT_THROW(parse_hurdat2(text), CountMismatch);
}

TEST(ParseHurdat2, MalformedHemisphereNamesLine) {
  try {
    parse_hurdat2(ReadFixture("hurdat2_bad_hemisphere.txt"));
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 6u);
  }
}

TEST(ParseHurdat2, RejectsMalformedFields) {
  const std::string header = "EP011949, UNNAMED, 1,\n";
  for (const char* bad : {"19490611, 0000,  , TS, 20.2N, 106.3W,  45\n",
                          "19491311, 0000,  , TS, 20.2N, 106.3W,  45, -999,\n",
                          "19490611, 2500,  , TS, 20.2N, 106.3W,  45, -999,\n",
                          "19490611, 0000,  , TSX, 20.2N, 106.3W,  45, -999,\n",
                          "19490611, 0000,  , TS, 95.0N, 106.3W,  45, -999,\n",
                          "19490611, 0000,  , TS, 20.2N, 106.3W,  4x, -999,\n"}) {
    EXPECT_THROW(parse_hurdat2(header + bad), ParseError) << bad;
  }
  EXPECT_THROW(parse_hurdat2("19490611, 0000,  , TS, 20.2N, 106.3W,  45, -999,\n"), ParseError);
  EXPECT_THROW(parse_hurdat2("EP011949, UNNAMED, 1, extra,\n"), ParseError);
}

TEST(ParseHurdat2, RejectsOutOfOrderRecords) {
  const std::string text =
      "EP011949, UNNAMED, 2,\n"
      "19490611, 0600,  , TS, 20.2N, 106.3W,  45, -999,\n"
      "19490611, 0000,  , TS, 20.2N, 106.4W,  45, -999,\n";
  EXPECT_THROW(parse_hurdat2(text), ParseError);
}

TEST(ParseHurdat2, ToleratesSpacingAndLineEndings) {
  const std::string text =
      "EP011949,UNNAMED,1\r\n"
      "19490611,0000,,TS,20.2N,106.3W,45,-999\r\n";
  const auto tracks = parse_hurdat2(text);
  ASSERT_EQ(tracks.size(), 1u);
  EXPECT_DOUBLE_EQ(tracks[0].records[0].position.lon(), -106.3);
}

TEST(ParseHurdat2, ParseSerializeParseIsIdempotent) {
  const auto tracks = parse_hurdat2(ReadFixture("hurdat2_golden.txt"));
  const std::string written = write_hurdat2(tracks);
  EXPECT_EQ(parse_hurdat2(written), tracks);
  EXPECT_EQ(write_hurdat2(parse_hurdat2(written)), written);
}

TEST(ParseHurdat2, RecordCountConservation) {
  const std::string text = ReadFixture("hurdat2_golden.txt");
  const auto tracks = parse_hurdat2(text);
  std::size_t parsed = 0;
  for (const auto& t : tracks) parsed += t.records.size();
  EXPECT_EQ(parsed, 2u + 3u);
}

TEST(EndLocations, LastRecordOfEachTrack) {
  const auto tracks = parse_hurdat2(ReadFixture("hurdat2_golden.txt"));
  const auto ends = end_locations(tracks);
  ASSERT_EQ(ends.size(), tracks.size());
  for (std::size_t i = 0; i < ends.size(); ++i) {
    EXPECT_NEAR(norm(ends[i].vec()), 1.0, 1e-12);
    EXPECT_EQ(ends[i], geo_to_unit(tracks[i].records.back().position));
  }
  for (const auto& t : tracks)
    for (const auto& r : t.records) {
      const GeoCoordinate back = unit_to_geo(geo_to_unit(r.position));
      EXPECT_NEAR(back.lat(), r.position.lat(), 1e-9);
      EXPECT_NEAR(back.lon(), r.position.lon(), 1e-9);
    }
}

TEST(EndLocations, SingleRecordAndEmptyTrack) {
  StormTrack one{"EP011950", "ABLE", {TrackRecord{19500101, 0, ' ', "TS", GeoCoordinate(10, -100), 30, 1000}}};
  EXPECT_EQ(end_locations({one}).front(), geo_to_unit(GeoCoordinate(10, -100)));
  StormTrack empty{"EP021950", "BAKER", {}};
  EXPECT_THROW(end_locations({one, empty}), EmptyTrack);
}

}  // namespace
}  // namespace sphereflow
