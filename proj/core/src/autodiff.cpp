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

#include "sphereflow/autodiff.hpp"

namespace sphereflow::ad {

void Tape::backward(std::vector<double>& adjoint, std::size_t begin, std::size_t end) const {
  for (std::size_t i = end; i-- > begin;) {
    const double a = adjoint[i];
    if (a == 0.0) continue;
    const Node& n = nodes_[i];
    if (n.lhs >= 0) adjoint[n.lhs] += a * n.dlhs;
    if (n.rhs >= 0) adjoint[n.rhs] += a * n.drhs;
  }
}

Tape& active_tape() {
  thread_local Tape tape;
  return tape;
}

}  // namespace sphereflow::ad
