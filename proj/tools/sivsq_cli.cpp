// Copyright 2026 The sivsq Authors
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

// sivsq: figure recipes, device reports and sweeps.
//
//   sivsq run --experiment fig3 --out results
//   sivsq run --config my.json --si
//   sivsq sweep --config grid.json
//   sivsq beam | zeeman [--config device.json]
//   sivsq list-experiments
//
// Exit codes: 0 success, 2 invalid input, 3 runtime failure.

#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "sivsq/experiments.hpp"

namespace {

constexpr int kExitValidation = 2;
constexpr int kExitRuntime = 3;

struct Common {
  std::string config_path;
  std::string experiment;
  std::string out_dir = ".";
  bool si = false;
  double tol = 0.0;
};

sivsq::Json load_json(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw sivsq::ValidationError("--config: cannot open " + path);
  try {
    return sivsq::Json::parse(f, nullptr, true, true);
  } catch (const nlohmann::json::parse_error& e) {
    throw sivsq::ValidationError("--config: " + std::string(e.what()));
  }
}

sivsq::ExperimentConfig make_config(const Common& o, const std::string& forced) {
  sivsq::Json j = o.config_path.empty() ? sivsq::Json::object() : load_json(o.config_path);
  if (!forced.empty()) {
    if (j.contains("experiment") && j["experiment"] != forced) {
      throw sivsq::ValidationError("experiment: config names '" +
                                   j["experiment"].get<std::string>() + "' but the subcommand is " +
                                   forced);
    }
    j["experiment"] = forced;
  } else if (!o.experiment.empty()) {
    j["experiment"] = o.experiment;
  }
  if (o.si) j["si"] = true;
  if (o.tol > 0.0) {
    j["numerics"]["rtol"] = o.tol;
    j["numerics"]["atol"] = o.tol * 1e-2;
  }
  return sivsq::parse_config(j);
}

int execute(const Common& o, const std::string& forced) {
  const sivsq::ExperimentConfig config = make_config(o, forced);
  const sivsq::ExperimentResult result = sivsq::run_experiment(config);
  for (const auto& w : result.warnings) std::cerr << "warning: " << w << "\n";
  for (const auto& p : sivsq::write_outputs(config, result, o.out_dir)) {
    std::cout << p.string() << "\n";
  }
  std::cout << result.headline.dump(2) << "\n";
  return 0;
}

void add_common(CLI::App* cmd, Common& o) {
  cmd->add_option("--config", o.config_path, "JSON config file");
  cmd->add_option("--out", o.out_dir, "output directory");
  cmd->add_flag("--si", o.si, "emit the time axis in seconds");
  cmd->add_option("--tol", o.tol, "integrator relative tolerance (atol = tol/100)")
      ->check(CLI::PositiveNumber);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Steady spin squeezing in SiV-nanobeam hybrid systems"};
  app.require_subcommand(1);
  Common opts;
  auto* run = app.add_subcommand("run", "run one experiment recipe");
  add_common(run, opts);
  run->add_option("--experiment", opts.experiment, "experiment id (see list-experiments)");
  auto* sweep = app.add_subcommand("sweep", "grid over up to two parameters");
  add_common(sweep, opts);
  auto* beam = app.add_subcommand("beam", "nanobeam device report");
  add_common(beam, opts);
  auto* zeeman = app.add_subcommand("zeeman", "Zeeman splittings per orientation");
  add_common(zeeman, opts);
  auto* list = app.add_subcommand("list-experiments", "list recipe ids");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitValidation;
  }

  try {
    if (list->parsed()) {
      for (const auto& e : sivsq::list_experiments()) {
        std::cout << e.id << "\t" << e.description << "\n";
      }
      return 0;
    }
    if (run->parsed()) {
      if (opts.config_path.empty() && opts.experiment.empty()) {
        throw sivsq::ValidationError("run: give --config or --experiment");
      }
      return execute(opts, "");
    }
    if (sweep->parsed()) return execute(opts, "sweep");
    if (beam->parsed()) return execute(opts, "beam");
    if (zeeman->parsed()) return execute(opts, "zeeman");
  } catch (const sivsq::ValidationError& e) {
    std::cerr << "invalid input: " << e.what() << "\n";
    return kExitValidation;
  } catch (const std::exception& e) {
    std::cerr << "runtime failure: " << e.what() << "\n";
    return kExitRuntime;
  }
  return 0;
}
