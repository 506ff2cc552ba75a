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

#ifndef SPHEREFLOW_AUTODIFF_HPP
#define SPHEREFLOW_AUTODIFF_HPP

// Minimal scalar reverse-mode automatic differentiation.
//
// Every operation on a Var appends one node to the calling thread's active
// Tape. A node stores at most two parents with their local partials, which
// is all the flow kernels need. Operations whose inputs are all constants
// produce constants and record nothing.

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <vector>

namespace sphereflow::ad {

class Tape {
 public:
  struct Node {
    std::int32_t lhs;
    std::int32_t rhs;
    double dlhs;
    double drhs;
  };

  std::int32_t push_leaf() { return push(-1, 0.0, -1, 0.0); }
  std::int32_t push(std::int32_t lhs, double dlhs, std::int32_t rhs, double drhs) {
    nodes_.push_back({lhs, rhs, dlhs, drhs});
    return static_cast<std::int32_t>(nodes_.size() - 1);
  }

  std::size_t size() const noexcept { return nodes_.size(); }
  void truncate(std::size_t n) { nodes_.resize(n); }
  void clear() { nodes_.clear(); }
  void reserve(std::size_t n) { nodes_.reserve(n); }

  /// Sweeps nodes [begin, end) in reverse, pushing adjoints into parents.
  /// Parents below `begin` accumulate but are not swept.
  void backward(std::vector<double>& adjoint, std::size_t begin, std::size_t end) const;

 private:
  std::vector<Node> nodes_;
};

/// The tape used by Var arithmetic on this thread.
Tape& active_tape();

class Var {
 public:
  Var() = default;
  Var(double value) : value_(value) {}  // NOLINT: constants convert implicitly

  static Var leaf(double value) {
    Var v(value);
    v.index_ = active_tape().push_leaf();
    return v;
  }
  /// Records f(a) with value `value` and derivative `deriv` = f'(a).
  static Var unary(const Var& a, double value, double deriv) {
    Var r(value);
    if (a.index_ >= 0) r.index_ = active_tape().push(a.index_, deriv, -1, 0.0);
    return r;
  }
  static Var binary(const Var& a, double da, const Var& b, double db, double value) {
    Var r(value);
    if (a.index_ >= 0 || b.index_ >= 0) r.index_ = active_tape().push(a.index_, da, b.index_, db);
    return r;
  }

  double value() const noexcept { return value_; }
  std::int32_t index() const noexcept { return index_; }
  bool is_constant() const noexcept { return index_ < 0; }

 private:
  double value_ = 0.0;
  std::int32_t index_ = -1;
};

inline Var operator+(const Var& a, const Var& b) {
  return Var::binary(a, 1.0, b, 1.0, a.value() + b.value());
}
inline Var operator-(const Var& a, const Var& b) {
  return Var::binary(a, 1.0, b, -1.0, a.value() - b.value());
}
inline Var operator*(const Var& a, const Var& b) {
  return Var::binary(a, b.value(), b, a.value(), a.value() * b.value());
}
inline Var operator/(const Var& a, const Var& b) {
  const double inv = 1.0 / b.value();
  const double q = a.value() * inv;
  return Var::binary(a, inv, b, -q * inv, q);
}
inline Var operator-(const Var& a) { return Var::unary(a, -a.value(), -1.0); }

inline Var operator+(const Var& a, double b) { return Var::unary(a, a.value() + b, 1.0); }
inline Var operator+(double a, const Var& b) { return Var::unary(b, a + b.value(), 1.0); }
inline Var operator-(const Var& a, double b) { return Var::unary(a, a.value() - b, 1.0); }
inline Var operator-(double a, const Var& b) { return Var::unary(b, a - b.value(), -1.0); }
inline Var operator*(const Var& a, double b) { return Var::unary(a, a.value() * b, b); }
inline Var operator*(double a, const Var& b) { return Var::unary(b, a * b.value(), a); }
inline Var operator/(const Var& a, double b) { return Var::unary(a, a.value() / b, 1.0 / b); }
inline Var operator/(double a, const Var& b) {
  const double q = a / b.value();
  return Var::unary(b, q, -q / b.value());
}

inline Var& operator+=(Var& a, const Var& b) { return a = a + b; }
inline Var& operator-=(Var& a, const Var& b) { return a = a - b; }

inline Var exp(const Var& a) {
  const double e = std::exp(a.value());
  return Var::unary(a, e, e);
}
inline Var log(const Var& a) { return Var::unary(a, std::log(a.value()), 1.0 / a.value()); }
inline Var sqrt(const Var& a) {
  const double s = std::sqrt(a.value());
  return Var::unary(a, s, 0.5 / s);
}
inline Var abs(const Var& a) {
  return Var::unary(a, std::abs(a.value()), a.value() < 0.0 ? -1.0 : 1.0);
}

inline double value_of(const Var& v) { return v.value(); }

}  // namespace sphereflow::ad

namespace sphereflow {
inline double value_of(double v) { return v; }
}  // namespace sphereflow

#endif  // SPHEREFLOW_AUTODIFF_HPP
