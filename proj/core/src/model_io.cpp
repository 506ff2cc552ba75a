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

#include "sphereflow/model_io.hpp"

#include <istream>
#include <iterator>
#include <ostream>

#include "json.hpp"
#include "sphereflow/error.hpp"

namespace sphereflow {
namespace {

using nlohmann::json;

constexpr const char* kFormat = "sphereflow-model";
constexpr int kVersion = 1;

json StackToJson(const FlowStack& stack) {
  json layers = json::array();
  for (const auto& layer : stack.layers()) {
    json beta = json::array();
    json eta = json::array();
    json m = json::array();
    for (const auto& c : layer.components()) {
      beta.push_back(c.beta);
      eta.push_back(c.eta);
      m.push_back({c.anchor.e1(), c.anchor.e2(), c.anchor.e3()});
    }
    layers.push_back({{"beta", beta}, {"eta", eta}, {"m", m}});
  }
  return {{"K", stack.size()}, {"p", stack.empty() ? 0 : stack[0].size()}, {"layers", layers}};
}

FlowStack StackFromJson(const json& j) {
  const auto K = j.at("K").get<std::size_t>();
  const auto p = j.at("p").get<std::size_t>();
  const json& layers = j.at("layers");
  if (!layers.is_array() || layers.size() != K) throw ParseError(0, "model: K does not match layers");
  std::vector<RadialLayer> out;
  out.reserve(K);
  for (const json& l : layers) {
    const auto beta = l.at("beta").get<std::vector<double>>();
    const auto eta = l.at("eta").get<std::vector<double>>();
    const auto m = l.at("m").get<std::vector<std::array<double, 3>>>();
    if (beta.size() != p || eta.size() != p || m.size() != p) {
      throw ParseError(0, "model: layer arrays do not have length p");
    }
    std::vector<RadialComponent> comps;
    for (std::size_t i = 0; i < p; ++i) {
      // Stored anchors are unit vectors already; keep their bits.
      const Vec3 v{m[i][0], m[i][1], m[i][2]};
      const UnitVector3 anchor =
          std::abs(dot(v, v) - 1.0) < 1e-12 ? UnitVector3::FromNormalized(v) : UnitVector3(v);
      comps.push_back({beta[i], anchor, eta[i]});
    }
    out.emplace_back(std::move(comps));
  }
  return FlowStack(std::move(out));
}

template <class F>
auto Guarded(F&& f) {
  try {
    return f();
  } catch (const json::exception& e) {
    throw ParseError(0, std::string("model: ") + e.what());
  } catch (const std::invalid_argument& e) {
    throw ParseError(0, std::string("model: ") + e.what());
  }
}

}  // namespace

std::string serialize_stack(const FlowStack& stack) { return StackToJson(stack).dump(2); }

FlowStack parse_stack(std::string_view text) {
  return Guarded([&] { return StackFromJson(json::parse(text)); });
}

void save_model(std::ostream& out, const IntensityEstimate& est) {
  json doc = {{"format", kFormat}, {"version", kVersion}, {"scale", est.scale},
              {"stack", StackToJson(est.stack)}};
  if (!est.committee.empty()) {
    json members = json::array();
    for (const auto& s : est.committee) members.push_back(StackToJson(s));
    doc["committee"] = std::move(members);
  }
  out << doc.dump(2) << '\n';
}

IntensityEstimate load_model(std::istream& in) {
  const std::string text(std::istreambuf_iterator<char>(in), {});
  return Guarded([&] {
    const json doc = json::parse(text);
    if (doc.at("format").get<std::string>() != kFormat) throw ParseError(0, "model: unknown format");
    if (doc.at("version").get<int>() != kVersion) throw ParseError(0, "model: unsupported version");
    IntensityEstimate est;
    est.scale = doc.at("scale").get<double>();
    if (!(est.scale >= 0.0)) throw ParseError(0, "model: scale must be nonnegative");
    est.stack = StackFromJson(doc.at("stack"));
    if (doc.contains("committee")) {
      for (const json& s : doc.at("committee")) est.committee.push_back(StackFromJson(s));
    }
    return est;
  });
}

}  // namespace sphereflow
