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

// Acceptance suite. Prints one PASS/FAIL line per criterion followed by
// indented detail lines. With no arguments every criterion runs; otherwise
// only the listed numbers. Exit status is nonzero if any selected criterion
// fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <fstream>
#include <functional>
#include <map>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "sphereflow/bootstrap.hpp"
#include "sphereflow/error.hpp"
#include "sphereflow/evaluation.hpp"
#include "sphereflow/hurdat2.hpp"
#include "sphereflow/intensity.hpp"
#include "sphereflow/simulation.hpp"
#include "support/oracles.hpp"

namespace sf = sphereflow;
using sf::UnitVector3;

namespace {

using Clock = std::chrono::steady_clock;

struct Outcome {
  bool pass = true;
  std::vector<std::string> details;

  void Check(bool ok, const std::string& what) {
    pass = pass && ok;
    details.push_back(std::string(ok ? "ok    " : "FAILED") + "  " + what);
  }
  void Note(const std::string& what) { details.push_back("info    " + what); }
};

std::string Fmt(const char* format, ...) __attribute__((format(printf, 1, 2)));
std::string Fmt(const char* format, ...) {
  char buf[512];
  va_list args;
  va_start(args, format);
  std::vsnprintf(buf, sizeof buf, format, args);
  va_end(args);
  return buf;
}

double Seconds(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

double Mean(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x;
  return s / static_cast<double>(v.size());
}

double SampleSd(const std::vector<double>& v) {
  const double m = Mean(v);
  double s = 0.0;
  for (double x : v) s += (x - m) * (x - m);
  return std::sqrt(s / static_cast<double>(v.size() - 1));
}

// 1. Log-det against the finite-difference Jacobian oracle.
Outcome LogDetOracle() {
  Outcome out;
  const auto start = Clock::now();
  sf::Rng rng(1001);
  std::uniform_int_distribution<std::size_t> k(1, 5), p(1, 3);
  double worst = 0.0;
  int evaluated = 0;
  for (int s = 0; s < 100; ++s) {
    const sf::FlowStack stack = sf::testing::RandomStack(rng, k(rng), p(rng), 5.0);
    for (int i = 0; i < 10; ++i) {
      const UnitVector3 x = sf::testing::RandomUnit(rng);
      const double value = sf::stack_forward(stack, x).total_log_det;
      const double oracle = sf::testing::FiniteDifferenceLogDet(sf::testing::StackMap(stack), x);
      // Relative to the determinant when the log-det is near zero.
      worst = std::max(worst, std::abs(value - oracle) / std::max(1.0, std::abs(oracle)));
      ++evaluated;
    }
  }
  const double elapsed = Seconds(start);
  out.Check(worst <= 1e-5, Fmt("max relative error %.3e over %d (stack, point) pairs (<= 1e-5)", worst, evaluated));
  out.Check(elapsed < 60.0, Fmt("runtime %.2f s (< 60 s)", elapsed));
  return out;
}

// 2. Autodiff gradient against central differences.
Outcome GradientCheck() {
  Outcome out;
  const auto start = Clock::now();
  sf::Rng data_rng(1002);
  const auto points = sf::sample_scenario(sf::scenario_preset("lambda3"), data_rng, 20);
  for (std::size_t K : {1u, 5u, 30u}) {
    for (std::size_t p : {1u, 2u}) {
      sf::FitConfig config;
      config.layers = K;
      config.components = p;
      config.seed = 77 + K * 10 + p;
      const sf::UnconstrainedParams raw = sf::initial_params(config);
      const auto g = sf::grad_log_likelihood(raw, points).gradient;
      const auto fd = sf::testing::FiniteDifferenceGradient(raw, points, 1e-5);
      double worst = 0.0;
      std::size_t checked = 0;
      for (std::size_t i = 0; i < fd.size(); ++i) {
        if (std::abs(fd[i]) <= 1e-8) continue;
        worst = std::max(worst, sf::testing::RelativeError(g[i], fd[i]));
        ++checked;
      }
      out.Check(worst <= 1e-4, Fmt("K=%zu p=%zu: max relative error %.3e over %zu coordinates (<= 1e-4)", K, p,
                                   worst, checked));
    }
  }
  const double elapsed = Seconds(start);
  out.Check(elapsed < 120.0, Fmt("runtime %.2f s (< 120 s)", elapsed));
  return out;
}

// 3. Change-of-variables mass conservation on the default grid.
Outcome MassConservation() {
  Outcome out;
  const auto start = Clock::now();
  sf::Rng rng(1003);
  std::uniform_int_distribution<std::size_t> k(1, 30), p(1, 3);
  const sf::SphereGrid grid(sf::kDefaultGridSize);
  double worst = 0.0;
  for (int s = 0; s < 20; ++s) {
    const sf::FlowStack stack = sf::testing::RandomStack(rng, k(rng), p(rng), 50.0);
    const double mass = sf::integrate(grid, [&](const UnitVector3& x) {
      return std::exp(sf::process_log_density(stack, x));
    });
    worst = std::max(worst, std::abs(mass - 1.0));
  }
  const double elapsed = Seconds(start);
  out.Check(worst <= 5e-3, Fmt("max |mass - 1| = %.3e over 20 stacks, K <= 30, beta <= 50 (<= 5e-3)", worst));
  out.Check(elapsed < 60.0, Fmt("runtime %.2f s (< 60 s)", elapsed));
  return out;
}

struct CellResult {
  std::vector<double> l1;  // integral over the sphere, events
};

CellResult RunCell(const std::string& scenario, std::size_t K, int replicates, std::uint64_t base_seed) {
  const sf::SimulationScenario truth = sf::scenario_preset(scenario, 500.0);
  const sf::SphereGrid grid(sf::kDefaultGridSize);
  const auto truth_values =
      sf::evaluate_on_grid(grid, [&](const UnitVector3& x) { return sf::scenario_density(truth, x); });
  CellResult cell;
  for (int r = 0; r < replicates; ++r) {
    sf::Rng rng(sf::DeriveSeed(base_seed, static_cast<std::uint64_t>(r)));
    const auto points = sf::sample_scenario(truth, rng, 500);
    sf::FitConfig config;
    config.layers = K;
    config.components = 1;
    config.seed = base_seed + static_cast<std::uint64_t>(r);
    const sf::IntensityEstimate est = sf::fit(points, config).estimate;
    const auto values = sf::evaluate_on_grid(grid, [&](const UnitVector3& x) { return sf::intensity(est, x); });
    cell.l1.push_back(sf::l1_distance(grid, truth_values, values));
  }
  return cell;
}

// 4. Desk-scale L1 cells at n = 500, p = 1, five replicates each.
Outcome DeskScaleL1() {
  Outcome out;
  const auto start = Clock::now();
  constexpr int kReplicates = 5;
  constexpr double kArea = 4.0 * std::numbers::pi;
  auto report = [&](const char* label, const CellResult& c, bool ok, const std::string& bound) {
    const double m = Mean(c.l1);
    out.Check(ok, Fmt("%s: mean L1 %.2f events (sd %.2f) %s", label, m, SampleSd(c.l1), bound.c_str()));
    out.Note(Fmt("%s: per steradian %.3f (sd %.3f)", label, m / kArea, SampleSd(c.l1) / kArea));
  };
  const CellResult l2k20 = RunCell("lambda2", 20, kReplicates, 4020);
  report("(a) lambda2 K=20", l2k20, Mean(l2k20.l1) <= 15.0, "(<= 15)");
  const CellResult l3k20 = RunCell("lambda3", 20, kReplicates, 4320);
  report("(b) lambda3 K=20", l3k20, Mean(l3k20.l1) <= 25.0, "(<= 25)");
  const CellResult l4k30 = RunCell("lambda4", 30, kReplicates, 4430);
  report("(c) lambda4 K=30", l4k30, Mean(l4k30.l1) <= 28.0, "(<= 28)");
  const CellResult l1k1 = RunCell("lambda1", 1, kReplicates, 4101);
  report("(d) lambda1 K=1", l1k1, Mean(l1k1.l1) >= 5.0 && Mean(l1k1.l1) <= 22.0, "(in [5, 22])");
  const CellResult l2k1 = RunCell("lambda2", 1, kReplicates, 4201);
  const CellResult l2k5 = RunCell("lambda2", 5, kReplicates, 4205);
  const double m20 = Mean(l2k20.l1), m1 = Mean(l2k1.l1), m5 = Mean(l2k5.l1);
  out.Check(m20 < m1 && m20 < m5,
            Fmt("(e) lambda2 ordering: K=20 %.2f < K=1 %.2f and K=5 %.2f", m20, m1, m5));
  const double elapsed = Seconds(start);
  out.Check(elapsed < 1800.0, Fmt("runtime %.1f s (< 1800 s)", elapsed));
  return out;
}

double MeanResultantLength(const std::vector<UnitVector3>& pts) {
  sf::Vec3 s{0, 0, 0};
  for (const auto& p : pts)
    for (int k = 0; k < 3; ++k) s[k] += p[k];
  return sf::norm(s) / static_cast<double>(pts.size());
}

// 5. The fitted stack pushes the data towards uniform.
Outcome Uniformization() {
  Outcome out;
  sf::Rng rng(1005);
  const auto points = sf::sample_scenario(sf::scenario_preset("lambda2"), rng, 500);
  sf::FitConfig config;
  config.layers = 20;
  config.seed = 5005;
  const sf::IntensityEstimate est = sf::fit(points, config).estimate;
  std::vector<UnitVector3> pushed;
  for (const auto& x : points) pushed.push_back(sf::stack_forward(est.stack, x).z);
  const double raw = MeanResultantLength(points);
  const double after = MeanResultantLength(pushed);
  out.Check(raw > 0.9, Fmt("raw data mean resultant length %.4f (> 0.9)", raw));
  out.Check(after < 0.15, Fmt("transformed mean resultant length %.4f (< 0.15)", after));
  return out;
}

// 6. Bootstrap contract on a lambda2 dataset with B = 50.
Outcome BootstrapContract() {
  Outcome out;
  const auto start = Clock::now();
  sf::Rng data_rng(1006);
  const auto points = sf::sample_scenario(sf::scenario_preset("lambda2"), data_rng, 500);
  sf::FitConfig config;
  config.layers = 5;
  config.iterations = 200;
  const sf::SphereGrid grid(sf::kDefaultGridSize);
  const double qs[] = {0.1, 0.5, 0.9};
  auto run = [&] {
    sf::Rng rng(6006);
    return sf::run_bootstrap(points, config, 50, rng, 0);
  };
  const sf::BootstrapResult first = run();
  const auto bands = sf::percentile_bands(first, grid, qs);
  std::size_t disordered = 0;
  for (std::size_t k = 0; k < grid.size(); ++k)
    disordered += !(bands[0][k] <= bands[1][k] && bands[1][k] <= bands[2][k]);
  out.Check(disordered == 0, Fmt("q10 <= q50 <= q90 violated at %zu of %zu nodes", disordered, grid.size()));
  std::vector<double> counts(first.counts.begin(), first.counts.end());
  const double mean = Mean(counts);
  const double bound = 3.0 * std::sqrt(500.0 / static_cast<double>(counts.size()));
  out.Check(std::abs(mean - 500.0) <= bound,
            Fmt("mean n_b %.2f within 500 +/- %.2f (effective B %zu of %zu)", mean, bound, first.effective(),
                first.requested));
  const auto again = sf::percentile_bands(run(), grid, qs);
  out.Check(again == bands, "identical seeds reproduce identical bands");
  const double elapsed = Seconds(start);
  out.Check(elapsed < 900.0, Fmt("runtime %.1f s (< 900 s)", elapsed));
  return out;
}

// 7. stack_inverse undoes stack_forward.
Outcome InverseRoundTrip() {
  Outcome out;
  sf::Rng rng(1007);
  std::uniform_int_distribution<std::size_t> k(1, 5), p(1, 3);
  double worst = 0.0;
  int failures = 0;
  for (int i = 0; i < 100; ++i) {
    const sf::FlowStack stack = sf::testing::RandomStack(rng, k(rng), p(rng), 5.0);
    const UnitVector3 x = sf::testing::RandomUnit(rng);
    try {
      const UnitVector3 back = sf::stack_inverse(stack, sf::stack_forward(stack, x).z, 1e-8, 200);
      worst = std::max(worst, sf::geodesic_distance(back, x));
    } catch (const sf::NoConvergence&) {
      ++failures;
    }
  }
  out.Check(failures == 0, Fmt("%d of 100 inversions failed to converge", failures));
  out.Check(worst <= 1e-6, Fmt("max geodesic round-trip error %.3e (<= 1e-6)", worst));
  return out;
}

std::string ReadFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) return {};
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// 8. HURDAT2 ingest.
Outcome Hurdat2() {
  Outcome out;
  const std::string path = SPHEREFLOW_HURDAT2_NEPAC;
  const std::string text = ReadFile(path);
  if (text.empty()) {
    out.Check(false, "NE-Pacific 1949-2020 file not available at " + path +
                         " (configure with -DSPHEREFLOW_HURDAT2_NEPAC=<path>)");
  } else {
    try {
      const auto tracks = sf::parse_hurdat2(text);
      const auto ends = sf::end_locations(tracks);
      out.Check(tracks.size() == 1049, Fmt("parsed %zu storms (1049)", tracks.size()));
      out.Check(ends.size() == 1049, Fmt("%zu end locations (1049)", ends.size()));
    } catch (const std::exception& e) {
      out.Check(false, std::string("NE-Pacific file failed to parse: ") + e.what());
    }
  }
  const std::string dir = SPHEREFLOW_TEST_DATA_DIR;
  const auto golden = sf::parse_hurdat2(ReadFile(dir + "/hurdat2_golden.txt"));
  out.Check(golden.size() == 2 && golden[0].records.size() == 2 && golden[1].records.size() == 3,
            "golden fixture parses to 2 tracks with 2 and 3 records");
  bool mismatch = false;
  try {
    sf::parse_hurdat2(ReadFile(dir + "/hurdat2_count_mismatch.txt"));
  } catch (const sf::CountMismatch&) {
    mismatch = true;
  }
  out.Check(mismatch, "count 3 -> 4 raises CountMismatch");
  bool parse_error = false;
  try {
    sf::parse_hurdat2(ReadFile(dir + "/hurdat2_bad_hemisphere.txt"));
  } catch (const sf::ParseError&) {
    parse_error = true;
  }
  out.Check(parse_error, "malformed hemisphere letter raises ParseError");
  return out;
}

// 9. Objective plus full gradient at the cyclone-data scale.
Outcome Timing() {
  Outcome out;
  sf::Rng rng(1009);
  std::vector<UnitVector3> points;
  for (int i = 0; i < 1049; ++i) points.push_back(sf::testing::RandomUnit(rng));
  sf::FitConfig config;
  config.layers = 30;
  config.components = 1;
  const sf::UnconstrainedParams raw = sf::initial_params(config);
  sf::grad_log_likelihood(raw, points);  // warm the tape allocation
  std::vector<double> times;
  for (int i = 0; i < 5; ++i) {
    const auto start = Clock::now();
    const auto g = sf::grad_log_likelihood(raw, points);
    times.push_back(Seconds(start));
    if (!std::isfinite(g.value)) out.Check(false, "objective is not finite");
  }
  std::sort(times.begin(), times.end());
  out.Check(times[2] < 1.0, Fmt("median objective + gradient time %.4f s for n=1049, K=30, p=1 (< 1 s)", times[2]));
  return out;
}

// 10. Sampler moments.
Outcome Samplers() {
  Outcome out;
  sf::Rng rng(1010);
  const UnitVector3 mode(0, 0, 1);
  const auto vmf = sf::sample_vmf(rng, mode, 100.0, 100000);
  double mean = 0.0;
  for (const auto& x : vmf) mean += sf::dot(mode.vec(), x.vec());
  mean /= 100000.0;
  out.Check(std::abs(mean - 0.99) <= 0.001, Fmt("vMF kappa=100 mean m.X %.5f (0.99 +/- 0.001)", mean));
  const auto uni = sf::sample_uniform_sphere(rng, 100000);
  std::size_t north = 0;
  for (const auto& x : uni) north += x.e3() > 0.0;
  const double split = static_cast<double>(north) / 100000.0;
  out.Check(std::abs(split - 0.5) <= 0.005, Fmt("uniform hemisphere split %.4f (0.5 +/- 0.005)", split));
  return out;
}

const std::map<int, std::pair<const char*, std::function<Outcome()>>>& Criteria() {
  static const std::map<int, std::pair<const char*, std::function<Outcome()>>> table{
      {1, {"log-det oracle equivalence", LogDetOracle}},
      {2, {"gradient check", GradientCheck}},
      {3, {"mass conservation", MassConservation}},
      {4, {"desk-scale L1 recovery", DeskScaleL1}},
      {5, {"uniformization", Uniformization}},
      {6, {"bootstrap contract", BootstrapContract}},
      {7, {"inverse round trip", InverseRoundTrip}},
      {8, {"HURDAT2 ingest", Hurdat2}},
      {9, {"timing sanity", Timing}},
      {10, {"sampler statistics", Samplers}},
  };
  return table;
}

}  // namespace

int main(int argc, char** argv) {
  std::vector<int> selected;
  for (int i = 1; i < argc; ++i) selected.push_back(std::atoi(argv[i]));
  if (selected.empty())
    for (const auto& [id, entry] : Criteria()) selected.push_back(id);

  int failed = 0;
  for (int id : selected) {
    const auto it = Criteria().find(id);
    if (it == Criteria().end()) {
      std::fprintf(stderr, "unknown criterion %d\n", id);
      return 2;
    }
    Outcome outcome;
    try {
      outcome = it->second.second();
    } catch (const std::exception& e) {
      outcome.Check(false, std::string("unexpected exception: ") + e.what());
    }
    std::printf("[%s] criterion %d: %s\n", outcome.pass ? "PASS" : "FAIL", id, it->second.first);
    for (const auto& d : outcome.details) std::printf("    %s\n", d.c_str());
    std::fflush(stdout);
    failed += !outcome.pass;
  }
  return failed == 0 ? 0 : 1;
}
