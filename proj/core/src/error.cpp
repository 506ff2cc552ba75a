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

#include "sphereflow/error.hpp"

#include <sstream>

namespace sphereflow {
namespace {

std::string Describe(const char* what, double value) {
  std::ostringstream os;
  os.precision(17);
  os << what << value;
  return os.str();
}

}  // namespace

AntipodalPoints::AntipodalPoints(double distance)
    : Error(Describe("log_map: points are antipodal, geodesic distance ", distance)),
      distance_(distance) {}

DegenerateJacobian::DegenerateJacobian(double determinant)
    : Error(Describe("layer_forward: degenerate Jacobian, |det| = ", determinant)),
      determinant_(determinant) {}

NoConvergence::NoConvergence(int iterations, double residual, std::string context)
    : Error(Describe(("stack_inverse: no convergence after " + std::to_string(iterations) +
                      " iterations" + (context.empty() ? "" : " (" + context + ")") +
                      ", residual ")
                         .c_str(),
                     residual)),
      iterations_(iterations),
      residual_(residual) {}

FitDiverged::FitDiverged(int iteration, double objective)
    : Error(Describe(("fit: objective diverged at iteration " + std::to_string(iteration) +
                      ", value ")
                         .c_str(),
                     objective)),
      iteration_(iteration) {}

CommitteeFailed::CommitteeFailed(int members)
    : Error("committee_fit: all " + std::to_string(members) + " members diverged") {}

NonFiniteValue::NonFiniteValue(std::size_t node_index)
    : Error("integrate: non-finite value at grid node " + std::to_string(node_index)),
      node_index_(node_index) {}

ParseError::ParseError(std::size_t line, const std::string& reason)
    : Error("parse error at line " + std::to_string(line) + ": " + reason),
      line_(line),
      reason_(reason) {}

CountMismatch::CountMismatch(const std::string& storm_id, std::size_t declared,
                             std::size_t found)
    : Error("parse_hurdat2: storm " + storm_id + " declares " + std::to_string(declared) +
            " entries but " + std::to_string(found) + " were found"),
      storm_id_(storm_id) {}

EmptyTrack::EmptyTrack(const std::string& storm_id)
    : Error("end_locations: storm " + storm_id + " has no records") {}

}  // namespace sphereflow
