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

#include "sphereflow/intensity.hpp"

#include <algorithm>
#include <cmath>
#include <iostream>
#include <stdexcept>

#include "sphereflow/autodiff.hpp"
#include "sphereflow/detail/flow_kernel.hpp"
#include "sphereflow/detail/parallel.hpp"
#include "sphereflow/error.hpp"
#include "sphereflow/random.hpp"

namespace sphereflow {

void FitConfig::validate() const {
  if (components < 1) throw std::invalid_argument("FitConfig: p must be >= 1");
  if (!(step_size > 0.0)) throw std::invalid_argument("FitConfig: step size must be positive");
  if (iterations < 0) throw std::invalid_argument("FitConfig: iterations must be >= 0");
  if (minibatch && *minibatch == 0) throw std::invalid_argument("FitConfig: minibatch must be >= 1");
  if (!(init_spread >= 0.0)) throw std::invalid_argument("FitConfig: init spread must be >= 0");
  if (!(moment_decay >= 0.0 && moment_decay < 1.0) ||
      !(second_moment_decay >= 0.0 && second_moment_decay < 1.0)) {
    throw std::invalid_argument("FitConfig: moment decays must lie in [0, 1)");
  }
}

double process_log_density(const FlowStack& stack, const UnitVector3& x) {
  return stack_forward(stack, x).total_log_det - kLogSphereArea;
}

double process_log_density(const IntensityEstimate& est, const UnitVector3& x) {
  if (est.committee.empty()) return process_log_density(est.stack, x);
  std::vector<double> logs;
  logs.reserve(est.committee.size());
  for (const auto& member : est.committee) logs.push_back(process_log_density(member, x));
  const double top = *std::max_element(logs.begin(), logs.end());
  double sum = 0.0;
  for (double l : logs) sum += std::exp(l - top);
  return top + std::log(sum / static_cast<double>(logs.size()));
}

double intensity(const IntensityEstimate& est, const UnitVector3& x) {
  return est.scale * std::exp(process_log_density(est, x));
}

double log_likelihood(const FlowStack& stack, std::span<const UnitVector3> points) {
  double total = 0.0;
  for (const auto& x : points) total += process_log_density(stack, x);
  return total;
}

namespace {

using ad::Var;

// A radial layer whose parameters live on the AD tape.
struct TapedLayer {
  std::vector<Var> betas;
  std::vector<Var> etas;
  std::vector<Vec3T<Var>> anchors;

  std::size_t size() const { return betas.size(); }
  const Var& beta(std::size_t i) const { return betas[i]; }
  const Var& eta(std::size_t i) const { return etas[i]; }
  const Vec3T<Var>& anchor(std::size_t i) const { return anchors[i]; }
};

Var TapedSoftplus(const Var& x) {
  const double v = x.value();
  return Var::unary(x, softplus(v), 1.0 / (1.0 + std::exp(-v)));
}

// Records constrain() on the tape; leaves are pushed first, in flatten() order.
std::vector<TapedLayer> RecordConstrain(const UnconstrainedParams& raw,
                                        std::vector<std::int32_t>& leaves) {
  std::vector<TapedLayer> layers(raw.layers());
  for (std::size_t k = 0; k < raw.layers(); ++k) {
    const std::size_t p = raw.components();
    std::vector<Var> logits;
    TapedLayer& layer = layers[k];
    for (std::size_t i = 0; i < p; ++i) {
      const RawComponent& c = raw.at(k, i);
      const Var b = Var::leaf(c.b_raw);
      const Vec3T<Var> u{Var::leaf(c.u_raw[0]), Var::leaf(c.u_raw[1]), Var::leaf(c.u_raw[2])};
      const Var a = Var::leaf(c.a_raw);
      leaves.insert(leaves.end(), {b.index(), u[0].index(), u[1].index(), u[2].index(), a.index()});
      layer.betas.push_back(TapedSoftplus(b) + kBetaFloor);
      layer.anchors.push_back(detail::Normalized(u));
      logits.push_back(a);
    }
    double top = logits[0].value();
    for (const auto& a : logits) top = std::max(top, a.value());
    std::vector<Var> weights;
    Var total = 0.0;
    for (const auto& a : logits) {
      weights.push_back(exp(a - top));
      total = (weights.size() == 1) ? weights.back() : total + weights.back();
    }
    for (const auto& w : weights) layer.etas.push_back(w / total);
  }
  return layers;
}

constexpr double kDegenerateDeterminant = 1e-300;

Var TapedPointLogDensity(const std::vector<TapedLayer>& layers, const UnitVector3& point) {
  Vec3T<Var> x{point.e1(), point.e2(), point.e3()};
  Var total = 0.0;
  for (std::size_t k = 0; k < layers.size(); ++k) {
    const auto [e_a, e_b] = detail::TangentBasis(x);
    const auto step = detail::EvaluateLayer<Var>(layers[k], x, e_a, e_b);
    const Vec3T<Var> y = detail::Normalized(step.y);
    // For a right-handed tangent frame at x, the tangent determinant is the
    // triple product with the outward normal at y.
    const Var det = dot(y, cross(step.dy_a, step.dy_b));
    if (!(std::abs(det.value()) >= kDegenerateDeterminant)) throw DegenerateJacobian(det.value());
    const Var log_det = log(abs(det));
    total = (k == 0) ? log_det : total + log_det;
    x = y;
  }
  return total - kLogSphereArea;
}

}  // namespace

LikelihoodGradient grad_log_likelihood(const UnconstrainedParams& raw,
                                       std::span<const UnitVector3> points) {
  LikelihoodGradient out;
  out.gradient.assign(raw.size(), 0.0);
  if (raw.layers() == 0) {
    out.value = -kLogSphereArea * static_cast<double>(points.size());
    return out;
  }
  ad::Tape& tape = ad::active_tape();
  tape.clear();
  std::vector<std::int32_t> leaves;
  leaves.reserve(raw.size());
  const std::vector<TapedLayer> layers = RecordConstrain(raw, leaves);
  const std::size_t prefix = tape.size();

  std::vector<double> adjoint(prefix, 0.0);
  for (const auto& point : points) {
    const Var lp = TapedPointLogDensity(layers, point);
    out.value += lp.value();
    adjoint.resize(tape.size(), 0.0);
    adjoint[lp.index()] += 1.0;
    tape.backward(adjoint, prefix, tape.size());
    tape.truncate(prefix);
    adjoint.resize(prefix);
  }
  tape.backward(adjoint, 0, prefix);
  for (std::size_t j = 0; j < leaves.size(); ++j) out.gradient[j] = adjoint[leaves[j]];
  tape.clear();
  return out;
}

UnconstrainedParams initial_params(const FitConfig& config) {
  Rng rng(config.seed);
  std::normal_distribution<double> normal;
  std::vector<std::vector<RawComponent>> layers(config.layers,
                                                std::vector<RawComponent>(config.components));
  for (auto& l : layers) {
    for (auto& c : l) {
      c.u_raw = StandardNormal3(rng);
      c.b_raw = config.init_spread * normal(rng);
      c.a_raw = 0.0;
    }
  }
  return UnconstrainedParams(std::move(layers));
}

FitResult fit(std::span<const UnitVector3> points, const FitConfig& config) {
  config.validate();
  if (points.empty()) throw std::invalid_argument("fit: needs at least one point");

  const std::size_t n = points.size();
  std::size_t batch = config.minibatch.value_or(n <= 5000 ? FitConfig::kFullBatch : 1024);
  batch = std::min(batch, n);
  const bool full_batch = batch == n;

  UnconstrainedParams params = initial_params(config);
  const std::size_t dim = params.size();
  const std::size_t K = params.layers();
  const std::size_t p = config.components;

  // The minibatch stream is independent of the initialization stream.
  Rng batch_rng(DeriveSeed(config.seed, 1));
  std::vector<UnitVector3> sample;

  auto evaluate = [&](const UnconstrainedParams& at, int iteration) {
    std::span<const UnitVector3> use = points;
    if (!full_batch) {
      sample.clear();
      std::uniform_int_distribution<std::size_t> pick(0, n - 1);
      for (std::size_t i = 0; i < batch; ++i) sample.push_back(points[pick(batch_rng)]);
      use = sample;
    }
    LikelihoodGradient g;
    try {
      g = grad_log_likelihood(at, use);
    } catch (const DegenerateJacobian&) {
      throw FitDiverged(iteration, -std::numeric_limits<double>::infinity());
    }
    const double factor = static_cast<double>(n) / static_cast<double>(use.size());
    g.value *= factor;
    if (!std::isfinite(g.value)) throw FitDiverged(iteration, g.value);
    for (double& d : g.gradient) {
      d /= static_cast<double>(use.size());
      if (!std::isfinite(d)) throw FitDiverged(iteration, g.value);
    }
    return g;
  };

  FitResult result;
  result.trace.reserve(static_cast<std::size_t>(config.iterations) + 1);
  UnconstrainedParams best = params;
  double best_value = -std::numeric_limits<double>::infinity();

  std::vector<double> theta = params.flatten();
  std::vector<double> m1(dim, 0.0);
  std::vector<double> m2(dim, 0.0);
  double decay1 = 1.0;
  double decay2 = 1.0;
  for (int it = 0; it <= config.iterations; ++it) {
    const LikelihoodGradient g = evaluate(params, it);
    if (g.value > best_value) {
      best_value = g.value;
      best = params;
    }
    result.trace.push_back({it, g.value, best_value});
    if (it == config.iterations) break;

    decay1 *= config.moment_decay;
    decay2 *= config.second_moment_decay;
    for (std::size_t j = 0; j < dim; ++j) {
      m1[j] = config.moment_decay * m1[j] + (1.0 - config.moment_decay) * g.gradient[j];
      m2[j] = config.second_moment_decay * m2[j] +
              (1.0 - config.second_moment_decay) * g.gradient[j] * g.gradient[j];
      const double mhat = m1[j] / (1.0 - decay1);
      const double vhat = m2[j] / (1.0 - decay2);
      theta[j] += config.step_size * mhat / (std::sqrt(vhat) + config.epsilon);
    }
    params = UnconstrainedParams(K, p, theta);
    theta = params.flatten();  // picks up anchor renormalization
  }

  result.estimate.stack = constrain(best);
  result.estimate.scale = static_cast<double>(n);
  result.params = std::move(best);
  return result;
}

IntensityEstimate committee_fit(std::span<const UnitVector3> points, const FitConfig& config,
                                int members, unsigned jobs) {
  if (members < 1) throw std::invalid_argument("committee_fit: needs R >= 1");
  config.validate();
  std::vector<std::optional<FlowStack>> stacks(static_cast<std::size_t>(members));
  detail::ParallelFor(stacks.size(), jobs, [&](std::size_t r) {
    FitConfig member = config;
    member.seed = config.seed + r;
    try {
      stacks[r] = fit(points, member).estimate.stack;
    } catch (const FitDiverged& e) {
      std::clog << "warning: committee member " << r << " (seed " << member.seed
                << ") dropped: " << e.what() << '\n';
    }
  });
  IntensityEstimate est;
  est.scale = static_cast<double>(points.size());
  for (auto& s : stacks) {
    if (s) est.committee.push_back(std::move(*s));
  }
  if (est.committee.empty()) throw CommitteeFailed(members);
  est.stack = est.committee.front();
  if (members == 1) est.committee.clear();
  return est;
}

}  // namespace sphereflow
