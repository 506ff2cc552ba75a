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

#ifndef SPHEREFLOW_ERROR_HPP
#define SPHEREFLOW_ERROR_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace sphereflow {

/// Base class of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// log_map was asked for a direction between (near-)antipodal points.
class AntipodalPoints : public Error {
 public:
  explicit AntipodalPoints(double distance);
  double distance() const noexcept { return distance_; }

 private:
  double distance_;
};

/// A flow layer collapsed the tangent plane (|det| below 1e-300).
class DegenerateJacobian : public Error {
 public:
  explicit DegenerateJacobian(double determinant);
  double determinant() const noexcept { return determinant_; }

 private:
  double determinant_;
};

/// The numerical inverse of a flow did not reach its tolerance.
class NoConvergence : public Error {
 public:
  NoConvergence(int iterations, double residual, std::string context = {});
  int iterations() const noexcept { return iterations_; }
  double residual() const noexcept { return residual_; }

 private:
  int iterations_;
  double residual_;
};

/// The maximum-likelihood objective became NaN or infinite.
class FitDiverged : public Error {
 public:
  FitDiverged(int iteration, double objective);
  int iteration() const noexcept { return iteration_; }

 private:
  int iteration_;
};

/// Every member of a committee fit diverged.
class CommitteeFailed : public Error {
 public:
  explicit CommitteeFailed(int members);
};

/// A quadrature integrand returned NaN or infinity.
class NonFiniteValue : public Error {
 public:
  explicit NonFiniteValue(std::size_t node_index);
  std::size_t node_index() const noexcept { return node_index_; }

 private:
  std::size_t node_index_;
};

/// Malformed text input (HURDAT2, CSV, model files).
class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& reason);
  std::size_t line() const noexcept { return line_; }
  const std::string& reason() const noexcept { return reason_; }

 private:
  std::size_t line_;
  std::string reason_;
};

/// A HURDAT2 header declared a different entry count than the data present.
class CountMismatch : public Error {
 public:
  CountMismatch(const std::string& storm_id, std::size_t declared, std::size_t found);
  const std::string& storm_id() const noexcept { return storm_id_; }

 private:
  std::string storm_id_;
};

/// A storm track without any records.
class EmptyTrack : public Error {
 public:
  explicit EmptyTrack(const std::string& storm_id);
};

}  // namespace sphereflow

#endif  // SPHEREFLOW_ERROR_HPP
