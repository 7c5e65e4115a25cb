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

#pragma once

// Figure recipes, device reports and parameter sweeps behind the command
// line tool. Dynamics parameters are in units of g (effective and full
// models) or of gamma (collective and ensemble models); device parameters
// are SI.

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "sivsq/integrator.hpp"

namespace sivsq {

using Json = nlohmann::ordered_json;

struct PhysicsConfig {
  int N = 4;
  double tan_theta = 0.2;
  std::optional<double> Omega1;  // when both drives are given theta follows from them
  std::optional<double> Omega2;
  double g = 1.0;        // units of g
  double Omega = 1.0;    // units of g
  double Delta = 20.0;   // units of g
  double kappa = 0.5;    // units of g
  double omega_B = 50.0; // units of g
  double gamma = 1.0;    // collective rate; sets the time unit of collective recipes
  double Gamma = 0.0;    // units of gamma
  int n_max = 5;
  std::string model = "collective";  // custom recipe: collective | effective | full | dephasing
  std::vector<double> tan_theta_grid;
  std::vector<int> N_list;
  std::vector<double> Gamma_list;  // units of gamma
  std::vector<double> eta_list;    // gamma / Gamma; 0 encodes no dephasing
  std::vector<double> initial_m;   // Dicke m of the initial states
  std::vector<int> initial_pairs;  // singlet pairs; S = N/2 - pairs

  double theta() const;
};

struct NumericsConfig {
  double rtol = 1e-8;
  double atol = 1e-10;
  double horizon = 100.0;  // in the recipe's time unit
  int samples = 201;
  std::string steady = "auto";  // auto | null_space | long_horizon | krylov | sparse_direct
};

struct DeviceConfig {
  double L = 6.29e-6;    // m
  double w = 0.5e-6;     // m
  double t = 0.5e-6;     // m
  double E = 1.05e12;    // Pa
  double rho = 3500.0;   // kg m^-3
  double nu = 0.2;
  double d = 2.0 * kPi * 1.0416666666666667e15;  // rad s^-1 per unit strain
  double kL = 67.55;
  std::string normalization = "unit_mean_square";  // | as_written | max_amplitude
  std::vector<double> B_direction{1.0, -1.0, 1.0};  // crystal frame
  double gamma_s_B = 2.0 * kPi * 20e9;              // rad s^-1
  double lambda_so = 2.0 * kPi * 45e9;              // rad s^-1
  double omega_orbital = 2.0 * kPi * 46e9;          // rad s^-1
};

struct SweepAxis {
  std::string name;  // N | tan_theta | Gamma | eta | kappa | Delta
  std::vector<double> values;
};

struct SweepConfig {
  std::string target = "exact_squeezing";
  std::vector<SweepAxis> axes;
};

struct ExperimentConfig {
  std::string experiment = "custom";
  PhysicsConfig physics;
  NumericsConfig numerics;
  DeviceConfig device;
  SweepConfig sweep;
  std::string out_prefix;  // default: experiment id
  bool si = false;
  unsigned seed = 0;       // reserved; every pipeline is deterministic
};

struct ExperimentInfo {
  std::string id;
  std::string description;
};

std::vector<ExperimentInfo> list_experiments();

// Recipe defaults.
ExperimentConfig default_config(const std::string& experiment);
// Experiment defaults overlaid with the keys of `j`; unknown keys and
// out-of-range values throw ValidationError naming the field.
ExperimentConfig parse_config(const Json& j);
Json to_json(const ExperimentConfig& config);

struct Table {
  std::string name;
  std::vector<std::string> columns;  // "name[unit]"
  std::vector<std::vector<std::string>> rows;

  void add_row(const std::vector<double>& values);
};

// Decimal, 12 significant digits.
std::string format_number(double value);

struct ExperimentResult {
  std::vector<Table> tables;
  Json headline = Json::object();
  std::vector<std::string> warnings;
};

ExperimentResult run_experiment(const ExperimentConfig& config);
ExperimentResult run_sweep(const ExperimentConfig& config);

std::string to_csv(const Table& table);
Json summary_json(const ExperimentConfig& config, const ExperimentResult& result);
// Writes <prefix>[_<table>].csv and <prefix>_summary.json; returns the paths.
std::vector<std::filesystem::path> write_outputs(const ExperimentConfig& config,
                                                 const ExperimentResult& result,
                                                 const std::filesystem::path& out_dir);

// SI scale of the dimensionless time units: g/2pi = 10 MHz, gamma/2pi = 25 kHz.
inline constexpr double kSiCoupling = 2.0 * kPi * 10e6;
inline constexpr double kSiCollectiveRate = 2.0 * kPi * 25e3;

}  // namespace sivsq
