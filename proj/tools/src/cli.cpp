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

#include "sphereflow/cli.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <memory>
#include <numbers>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "sphereflow/bootstrap.hpp"
#include "sphereflow/csv_io.hpp"
#include "sphereflow/error.hpp"
#include "sphereflow/evaluation.hpp"
#include "sphereflow/hurdat2.hpp"
#include "sphereflow/intensity.hpp"
#include "sphereflow/model_io.hpp"
#include "sphereflow/simulation.hpp"

namespace sphereflow::cli {
namespace {

namespace fs = std::filesystem;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Prefixes a library failure with the operation that raised it, unless the
// message already starts with it.
template <class F>
auto Step(const std::string& operation, F&& body) -> decltype(body()) {
  try {
    return body();
  } catch (const Error& e) {
    const std::string what = e.what();
    if (what.rfind(operation + ":", 0) == 0) throw;
    throw Error(operation + ": " + what);
  }
}

void RequireWritable(const std::string& path, const std::string& flag) {
  if (path == "-") return;
  const fs::path parent = fs::absolute(fs::path(path)).parent_path();
  if (!fs::is_directory(parent)) throw UsageError(flag + ": directory " + parent.string() + " does not exist");
  if (fs::is_directory(path)) throw UsageError(flag + ": " + path + " is a directory");
}

// Writes through `out` for "-", otherwise to the named file.
void WriteOutput(const std::string& path, std::ostream& out, const std::function<void(std::ostream&)>& body) {
  if (path == "-") {
    body(out);
    out.flush();
    return;
  }
  std::ofstream file(path, std::ios::binary);
  if (!file) throw Error("cannot open " + path + " for writing");
  body(file);
  file.flush();
  if (!file) throw Error("write to " + path + " failed");
}

std::ifstream OpenInput(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path);
  return in;
}

std::vector<UnitVector3> ReadPoints(const std::string& path) {
  std::ifstream in = OpenInput(path);
  return Step("read_points_csv", [&] { return read_points_csv(in); });
}

IntensityEstimate ReadModel(const std::string& path) {
  std::ifstream in = OpenInput(path);
  return Step("load_model", [&] { return load_model(in); });
}

const CLI::Validator kExistingOrStdin(
    [](std::string& value) -> std::string {
      if (value == "-") return {};
      return CLI::ExistingFile(value);
    },
    "FILE or -");

struct FitOptions {
  std::size_t layers = 20;
  std::size_t components = 1;
  double step = 0.05;
  int iterations = 500;
  std::size_t minibatch = 0;
  unsigned long long seed = kDefaultSeed;
  double spread = 1.0;

  void Add(CLI::App* app) {
    app->add_option("-K,--layers", layers, "Number of radial layers K")->capture_default_str();
    app->add_option("-p,--components", components, "Components per layer p")->capture_default_str();
    app->add_option("--step", step, "Adam step size")->capture_default_str();
    app->add_option("--iterations", iterations, "Optimizer iterations")->capture_default_str();
    app->add_option("--minibatch", minibatch,
                    "Minibatch size; 0 means full batch up to 5000 points, else 1024")
        ->capture_default_str();
    app->add_option("--seed", seed, "Random seed")->capture_default_str();
    app->add_option("--init-spread", spread, "Scale of the random initialization")->capture_default_str();
  }

  FitConfig Config() const {
    FitConfig c;
    c.layers = layers;
    c.components = components;
    c.step_size = step;
    c.iterations = iterations;
    if (minibatch > 0) c.minibatch = minibatch;
    c.seed = seed;
    c.init_spread = spread;
    try {
      c.validate();
    } catch (const std::invalid_argument& e) {
      throw UsageError(e.what());
    }
    return c;
  }
};

struct Context {
  std::ostream& out;
  std::ostream& err;
  unsigned jobs;
};

// Each subcommand validates every flag and path before doing any work, then
// runs.
struct Command {
  virtual ~Command() = default;
  virtual void Validate() = 0;
  virtual void Run(const Context& ctx) = 0;
};

struct Simulate : Command {
  std::string scenario;
  double expected = 500.0;
  std::optional<std::size_t> count;
  unsigned long long seed = kDefaultSeed;
  std::string output;
  bool xyz = false;

  explicit Simulate(CLI::App* app) {
    app->add_option("--scenario", scenario, "Scenario preset")
        ->required()
        ->check(CLI::IsMember(scenario_preset_names()));
    app->add_option("-n,--expected", expected, "Expected number of events n")->capture_default_str();
    app->add_option("--count", count, "Draw exactly this many points instead of a Poisson count");
    app->add_option("--seed", seed, "Random seed")->capture_default_str();
    app->add_option("-o,--output", output, "Point CSV (lon,lat in degrees), - for stdout")->required();
    app->add_flag("--xyz", xyz, "Also write x,y,z unit-vector columns");
  }
  void Validate() override {
    if (!(expected > 0.0)) throw UsageError("--expected must be positive");
    RequireWritable(output, "--output");
  }
  void Run(const Context& ctx) override {
    const SimulationScenario s = scenario_preset(scenario, expected);
    Rng rng(seed);
    const auto points = count ? sample_scenario(s, rng, *count) : simulate_scenario(s, rng);
    WriteOutput(output, ctx.out, [&](std::ostream& os) { write_points_csv(os, points, xyz); });
  }
};

struct Fit : Command {
  std::string input;
  FitOptions fit;
  int committee = 1;
  std::string model;
  std::string trace;
  FitConfig config;

  explicit Fit(CLI::App* app) {
    app->add_option("-i,--input", input, "Point CSV")->required()->check(CLI::ExistingFile);
    fit.Add(app);
    app->add_option("-R,--committee", committee, "Committee size; members use seeds seed..seed+R-1")
        ->capture_default_str();
    app->add_option("-m,--model", model, "Model file to write")->required();
    app->add_option("--trace", trace, "Optimization trace CSV (iteration,objective,best)");
  }
  void Validate() override {
    config = fit.Config();
    if (committee < 1) throw UsageError("--committee must be >= 1");
    if (committee > 1 && !trace.empty()) throw UsageError("--trace is only available with --committee 1");
    RequireWritable(model, "--model");
    if (!trace.empty()) RequireWritable(trace, "--trace");
  }
  void Run(const Context& ctx) override {
    const auto points = ReadPoints(input);
    IntensityEstimate est;
    if (committee == 1) {
      const FitResult r = Step("fit", [&] { return sphereflow::fit(points, config); });
      est = r.estimate;
      if (!trace.empty()) WriteOutput(trace, ctx.out, [&](std::ostream& os) { write_trace_csv(os, r.trace); });
    } else {
      est = Step("committee_fit", [&] { return committee_fit(points, config, committee, ctx.jobs); });
    }
    WriteOutput(model, ctx.out, [&](std::ostream& os) { save_model(os, est); });
  }
};

struct Bootstrap : Command {
  std::string input;
  FitOptions fit;
  int replicates = 50;
  std::size_t grid_size = kDefaultGridSize;
  std::vector<double> quantiles{0.1, 0.5, 0.9};
  std::string model;
  std::string output;
  FitConfig config;

  explicit Bootstrap(CLI::App* app) {
    app->add_option("-i,--input", input, "Point CSV")->required()->check(CLI::ExistingFile);
    fit.Add(app);
    app->add_option("-B,--replicates", replicates, "Bootstrap replicates B")->capture_default_str();
    app->add_option("--grid", grid_size, "Fibonacci grid nodes")->capture_default_str();
    app->add_option("-q,--quantiles", quantiles, "Band quantiles in [0, 1]")
        ->capture_default_str()
        ->delimiter(',')
        ->check(CLI::Range(0.0, 1.0));
    app->add_option("-m,--model", model,
                    "Model for the estimate column; without it the data are fitted with the same settings")
        ->check(CLI::ExistingFile);
    app->add_option("-o,--output", output, "Band CSV (lon,lat,q..,estimate), - for stdout")->required();
  }
  void Validate() override {
    config = fit.Config();
    if (replicates < 1) throw UsageError("--replicates must be >= 1");
    if (grid_size < 1) throw UsageError("--grid must be >= 1");
    RequireWritable(output, "--output");
  }
  void Run(const Context& ctx) override {
    const auto points = ReadPoints(input);
    const IntensityEstimate est = model.empty() ? Step("fit", [&] { return sphereflow::fit(points, config).estimate; })
                                                : ReadModel(model);
    Rng rng(config.seed);
    const BootstrapResult result =
        Step("run_bootstrap", [&] { return run_bootstrap(points, config, replicates, rng, ctx.jobs); });
    if (!result.failed.empty()) {
      ctx.err << "warning: " << result.failed.size() << " of " << result.requested
              << " replicates diverged twice and were excluded\n";
    }
    if (result.effective() == 0) throw Error("run_bootstrap: every replicate diverged");
    const SphereGrid grid(grid_size);
    const auto bands = percentile_bands(result, grid, quantiles);
    const auto estimate = evaluate_on_grid(grid, [&](const UnitVector3& x) { return intensity(est, x); });
    WriteOutput(output, ctx.out, [&](std::ostream& os) { write_band_csv(os, grid, quantiles, bands, estimate); });
  }
};

struct Evaluate : Command {
  std::string model;
  std::string scenario;
  double expected = 500.0;
  std::size_t grid_size = kDefaultGridSize;
  std::string output = "-";

  explicit Evaluate(CLI::App* app) {
    app->add_option("-m,--model", model, "Model file")->required()->check(CLI::ExistingFile);
    app->add_option("--scenario", scenario, "True scenario preset")
        ->required()
        ->check(CLI::IsMember(scenario_preset_names()));
    app->add_option("-n,--expected", expected, "Expected number of events n of the truth")->capture_default_str();
    app->add_option("--grid", grid_size, "Fibonacci grid nodes")->capture_default_str();
    app->add_option("-o,--output", output, "Report CSV, - for stdout")->capture_default_str();
  }
  void Validate() override {
    if (!(expected > 0.0)) throw UsageError("--expected must be positive");
    if (grid_size < 1) throw UsageError("--grid must be >= 1");
    RequireWritable(output, "--output");
  }
  void Run(const Context& ctx) override {
    const IntensityEstimate est = ReadModel(model);
    const SimulationScenario truth = scenario_preset(scenario, expected);
    const SphereGrid grid(grid_size);
    const double l1 = Step("l1_distance", [&] {
      return l1_distance(
          grid, [&](const UnitVector3& x) { return scenario_density(truth, x); },
          [&](const UnitVector3& x) { return intensity(est, x); });
    });
    char line[256];
    std::snprintf(line, sizeof line, "%s,%.17g,%zu,%.17g,%.17g\n", scenario.c_str(), expected, grid_size, l1,
                  l1 / (4.0 * std::numbers::pi));
    WriteOutput(output, ctx.out, [&](std::ostream& os) {
      os << "scenario,n,grid,l1_events,l1_per_steradian\n" << line;
    });
  }
};

struct Sample : Command {
  std::string model;
  std::size_t count = 0;
  unsigned long long seed = kDefaultSeed;
  double tol = 1e-10;
  int max_iter = 200;
  std::string output;
  bool xyz = false;

  explicit Sample(CLI::App* app) {
    app->add_option("-m,--model", model, "Model file")->required()->check(CLI::ExistingFile);
    app->add_option("-c,--count", count, "Number of draws")->required();
    app->add_option("--seed", seed, "Random seed")->capture_default_str();
    app->add_option("--tol", tol, "Inverse-map tolerance in radians")->capture_default_str();
    app->add_option("--max-iter", max_iter, "Inverse-map iterations per layer")->capture_default_str();
    app->add_option("-o,--output", output, "Point CSV, - for stdout")->required();
    app->add_flag("--xyz", xyz, "Also write x,y,z unit-vector columns");
  }
  void Validate() override {
    if (!(tol > 0.0)) throw UsageError("--tol must be positive");
    if (max_iter < 1) throw UsageError("--max-iter must be >= 1");
    RequireWritable(output, "--output");
  }
  void Run(const Context& ctx) override {
    const IntensityEstimate est = ReadModel(model);
    Rng rng(seed);
    const auto points = Step("sample_from_fitted", [&] { return sample_from_fitted(est, rng, count, tol, max_iter); });
    WriteOutput(output, ctx.out, [&](std::ostream& os) { write_points_csv(os, points, xyz); });
  }
};

struct Ingest : Command {
  std::string input;
  std::string output;
  bool xyz = false;

  explicit Ingest(CLI::App* app) {
    app->add_option("-i,--input", input, "HURDAT2 text file, - for stdin")->required()->check(kExistingOrStdin);
    app->add_option("-o,--output", output, "End-location point CSV, - for stdout")->required();
    app->add_flag("--xyz", xyz, "Also write x,y,z unit-vector columns");
  }
  void Validate() override { RequireWritable(output, "--output"); }
  void Run(const Context& ctx) override {
    std::vector<StormTrack> tracks;
    if (input == "-") {
      tracks = Step("parse_hurdat2", [&] { return parse_hurdat2(std::cin); });
    } else {
      std::ifstream in = OpenInput(input);
      tracks = Step("parse_hurdat2", [&] { return parse_hurdat2(in); });
    }
    const auto ends = Step("end_locations", [&] { return end_locations(tracks); });
    WriteOutput(output, ctx.out, [&](std::ostream& os) { write_points_csv(os, ends, xyz); });
  }
};

struct GridExport : Command {
  std::string model;
  std::size_t grid_size = kDefaultGridSize;
  std::string output;

  explicit GridExport(CLI::App* app) {
    app->add_option("-m,--model", model, "Model file")->required()->check(CLI::ExistingFile);
    app->add_option("--grid", grid_size, "Fibonacci grid nodes")->capture_default_str();
    app->add_option("-o,--output", output, "Grid CSV (lon,lat,value = intensity), - for stdout")->required();
  }
  void Validate() override {
    if (grid_size < 1) throw UsageError("--grid must be >= 1");
    RequireWritable(output, "--output");
  }
  void Run(const Context& ctx) override {
    const IntensityEstimate est = ReadModel(model);
    const SphereGrid grid(grid_size);
    const auto values = evaluate_on_grid(grid, [&](const UnitVector3& x) { return intensity(est, x); });
    WriteOutput(output, ctx.out, [&](std::ostream& os) { write_grid_csv(os, grid, values); });
  }
};

}  // namespace

int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Intensity estimation for spherical point patterns with exponential-map radial flows.\n"
               "Coordinates in every CSV are degrees with lon,lat column order.",
               args.empty() ? "sphereflow" : fs::path(args.front()).filename().string()};
  app.require_subcommand(1);
  app.set_config("--config", "", "TOML/INI file of option values; command-line flags take precedence");
  unsigned jobs = 0;
  app.add_option("-j,--jobs", jobs, "Worker threads for committees and bootstrap; 0 uses all cores")
      ->capture_default_str();

  std::vector<std::pair<CLI::App*, std::unique_ptr<Command>>> commands;
  auto add = [&]<class C>(const char* name, const char* help, std::type_identity<C>) {
    CLI::App* sub = app.add_subcommand(name, help);
    commands.emplace_back(sub, std::make_unique<C>(sub));
  };
  add("simulate", "Simulate a scenario preset to a point CSV", std::type_identity<Simulate>{});
  add("fit", "Fit a flow to a point CSV and write a model file", std::type_identity<Fit>{});
  add("bootstrap", "Pointwise bootstrap bands of the intensity on a grid", std::type_identity<Bootstrap>{});
  add("evaluate", "L1 distance between a model and a scenario preset", std::type_identity<Evaluate>{});
  add("sample", "Draw points from a fitted model", std::type_identity<Sample>{});
  add("ingest", "Extract storm end locations from a HURDAT2 file", std::type_identity<Ingest>{});
  add("grid-export", "Evaluate a model's intensity on a Fibonacci grid", std::type_identity<GridExport>{});

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    if (!reversed.empty()) reversed.pop_back();
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    if (app.get_subcommands().empty()) err << app.help();
    return kExitUsage;
  }

  for (auto& [sub, command] : commands) {
    if (!sub->parsed()) continue;
    const std::string name = sub->get_name();
    try {
      command->Validate();
    } catch (const UsageError& e) {
      err << "sphereflow " << name << ": " << e.what() << "\n";
      return kExitUsage;
    }
    try {
      command->Run({out, err, jobs});
    } catch (const std::exception& e) {
      err << "sphereflow " << name << ": " << e.what() << "\n";
      return kExitFailure;
    }
    return kExitSuccess;
  }
  return kExitUsage;
}

int dispatch(int argc, const char* const* argv) {
  return dispatch(std::vector<std::string>(argv, argv + argc), std::cout, std::cerr);
}

}  // namespace sphereflow::cli
