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

#ifndef SPHEREFLOW_MODEL_IO_HPP
#define SPHEREFLOW_MODEL_IO_HPP

#include <iosfwd>
#include <string>
#include <string_view>

#include "sphereflow/intensity.hpp"
#include "sphereflow/radial_flow.hpp"

namespace sphereflow {

// JSON documents. A stack is {"K", "p", "layers": [{"beta", "eta", "m"}]};
// a model adds "format", "version", "scale" and an optional "committee"
// array of stacks. Doubles round-trip exactly.

std::string serialize_stack(const FlowStack& stack);
/// Throws ParseError on malformed documents or violated layer invariants.
FlowStack parse_stack(std::string_view text);

void save_model(std::ostream& out, const IntensityEstimate& est);
IntensityEstimate load_model(std::istream& in);

}  // namespace sphereflow

#endif  // SPHEREFLOW_MODEL_IO_HPP
