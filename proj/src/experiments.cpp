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

#include "sivsq/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <set>

#include "sivsq/analytic_steady_state.hpp"
#include "sivsq/dephasing_model.hpp"
#include "sivsq/full_siv_model.hpp"
#include "sivsq/models.hpp"
#include "sivsq/moment_dynamics.hpp"
#include "sivsq/nanobeam.hpp"
#include "sivsq/steady_state.hpp"
#include "sivsq/zeeman.hpp"

namespace sivsq {

double PhysicsConfig::theta() const {
  if (Omega1 && Omega2) return mixing_angle(*Omega1, *Omega2);
  return std::atan(tan_theta);
}

std::vector<ExperimentInfo> list_experiments() {
  return {
      {"fig2a", "squeezing vs time: full four-level, effective and collective models (N=4)"},
      {"fig2b", "effective model from several initial Dicke states (N=100, kappa=g)"},
      {"fig3", "steady squeezing vs tan(theta): numerical steady state and dark state"},
      {"fig4", "collective-model squeezing vs time for several initial m"},
      {"fig5", "2^N ensemble with dephasing, initial states of different total spin"},
      {"fig6", "exact dark-state squeezing vs the linearized estimate"},
      {"fig7", "moment relaxation of delta Sz / N and optimal squeezing vs N"},
      {"fig8", "linearized steady squeezing with dephasing for several eta"},
      {"beam", "nanobeam mode, zero-point strain and coupling per orientation (SI)"},
      {"zeeman", "ground-state splittings per orientation for a static field (SI)"},
      {"sweep", "grid of up to two parameters over a scalar target"},
      {"custom", "single trajectory and steady state of a chosen model"},
  };
}

namespace {

bool known_experiment(const std::string& id) {
  for (const auto& e : list_experiments())
    if (e.id == id) return true;
  return false;
}

std::vector<double> grid(double a, double b, int n) {
  std::vector<double> v(n);
  for (int i = 0; i < n; ++i) v[i] = a + (b - a) * i / (n - 1);
  return v;
}

}  // namespace

ExperimentConfig default_config(const std::string& experiment) {
  if (!known_experiment(experiment)) {
    throw ValidationError("experiment: unknown id '" + experiment + "'");
  }
  ExperimentConfig c;
  c.experiment = experiment;
  PhysicsConfig& p = c.physics;
  NumericsConfig& n = c.numerics;
  if (experiment == "fig2a") {
    p.N = 4;
    p.kappa = 0.5;
    p.n_max = 3;
    n.horizon = 400.0;
    n.samples = 401;
  } else if (experiment == "fig2b") {
    p.N = 100;
    p.kappa = 1.0;
    p.n_max = 6;
    p.initial_m = {-50.0, -49.0, -48.0};
    n.horizon = 100.0;
  } else if (experiment == "fig3") {
    p.N = 100;
    p.tan_theta_grid = grid(0.0, 0.95, 20);
  } else if (experiment == "fig4") {
    p.N = 100;
    p.tan_theta_grid = {0.2, 0.9};
    p.initial_m = {-50.0, -25.0, 0.0, 25.0, 50.0};
    n.horizon = 2.0;
  } else if (experiment == "fig5") {
    p.N = 8;
    p.Gamma_list = {0.0, 0.1};
    p.initial_pairs = {0, 1, 2, 3};
    n.horizon = 60.0;
    n.samples = 121;
    n.rtol = 1e-7;
    n.atol = 1e-9;
  } else if (experiment == "fig6") {
    p.N_list = {10, 100};
    p.tan_theta_grid = grid(0.0, 0.95, 39);
  } else if (experiment == "fig7") {
    p.N = 100;
    p.tan_theta_grid = {0.2, 0.5, 0.7, 0.9};
    p.N_list = {10, 20, 50, 100, 200, 500, 1000, 2000, 5000, 10000};
    n.horizon = 0.2;
  } else if (experiment == "fig8") {
    p.N_list = {100, 1000};
    p.eta_list = {0.0, 10.0, 1.0, 0.1};
    p.tan_theta_grid = grid(0.0, 0.95, 39);
  } else if (experiment == "sweep") {
    c.sweep.axes = {{"N", {10, 100}}, {"tan_theta", {0.1, 0.3, 0.5}}};
  } else if (experiment == "custom") {
    p.N = 10;
    n.horizon = 5.0;
  }
  return c;
}

namespace {

class Reader {
 public:
  Reader(const Json& j, std::string path) : j_(j), path_(std::move(path)) {
    if (!j_.is_object()) throw ValidationError(where("") + " must be an object");
  }

  template <class T>
  void get(const std::string& key, T& out) {
    seen_.insert(key);
    if (!j_.contains(key)) return;
    try {
      out = j_.at(key).template get<T>();
    } catch (const nlohmann::json::exception& e) {
      throw ValidationError(where(key) + ": wrong type (" + e.what() + ")");
    }
  }

  template <class T>
  void get_optional(const std::string& key, std::optional<T>& out) {
    seen_.insert(key);
    if (!j_.contains(key) || j_.at(key).is_null()) return;
    T v{};
    get(key, v);
    out = v;
  }

  const Json* child(const std::string& key) {
    seen_.insert(key);
    return j_.contains(key) ? &j_.at(key) : nullptr;
  }

  void finish() const {
    for (auto it = j_.begin(); it != j_.end(); ++it) {
      if (!seen_.count(it.key())) throw ValidationError(where(it.key()) + ": unknown key");
    }
  }

  std::string where(const std::string& key) const {
    if (path_.empty()) return key;
    return key.empty() ? path_ : path_ + "." + key;
  }

 private:
  const Json& j_;
  std::string path_;
  std::set<std::string> seen_;
};

void require(bool ok, const std::string& field, const std::string& what) {
  if (!ok) throw ValidationError(field + ": " + what);
}

void validate_tan(double t, const std::string& field) {
  require(t >= 0.0 && t < 1.0, field, "tan(theta) must lie in [0, 1)");
}

void validate_config(const ExperimentConfig& c) {
  const PhysicsConfig& p = c.physics;
  const NumericsConfig& n = c.numerics;
  require(p.N >= 1, "physics.N", "must be >= 1");
  validate_tan(p.tan_theta, "physics.tan_theta");
  if (p.Omega1 || p.Omega2) {
    require(p.Omega1 && p.Omega2, "physics.Omega1", "Omega1 and Omega2 must be given together");
    require(*p.Omega1 >= 0.0 && *p.Omega2 > 0.0 && *p.Omega1 < *p.Omega2, "physics.Omega1",
            "need 0 <= Omega1 < Omega2");
  }
  require(p.g > 0.0, "physics.g", "must be positive");
  require(p.Omega > 0.0, "physics.Omega", "must be positive");
  require(p.Delta > 0.0, "physics.Delta", "must be positive");
  require(p.kappa > 0.0, "physics.kappa", "must be positive");
  require(p.omega_B > 0.0, "physics.omega_B", "must be positive");
  require(p.gamma > 0.0, "physics.gamma", "must be positive");
  require(p.Gamma >= 0.0, "physics.Gamma", "must be non-negative");
  require(p.n_max >= 1, "physics.n_max", "must be >= 1");
  require(p.model == "collective" || p.model == "effective" || p.model == "full" ||
              p.model == "dephasing",
          "physics.model", "must be collective, effective, full or dephasing");
  for (double t : p.tan_theta_grid) validate_tan(t, "physics.tan_theta_grid");
  for (int v : p.N_list) require(v >= 1, "physics.N_list", "entries must be >= 1");
  for (double v : p.Gamma_list) require(v >= 0.0, "physics.Gamma_list", "entries must be >= 0");
  for (double v : p.eta_list) require(v >= 0.0, "physics.eta_list", "entries must be >= 0");
  for (int v : p.initial_pairs)
    require(v >= 0 && 2 * v <= p.N, "physics.initial_pairs", "need 0 <= pairs <= N/2");
  for (double m : p.initial_m)
    require(std::abs(m) <= 0.5 * p.N && std::abs(m + 0.5 * p.N - std::round(m + 0.5 * p.N)) < 1e-12,
            "physics.initial_m", "must be one of -N/2, ..., N/2");
  require(n.rtol > 0.0, "numerics.rtol", "must be positive");
  require(n.atol > 0.0, "numerics.atol", "must be positive");
  require(n.horizon > 0.0, "numerics.horizon", "must be positive");
  require(n.samples >= 2, "numerics.samples", "must be >= 2");
  require(n.steady == "auto" || n.steady == "null_space" || n.steady == "long_horizon" ||
              n.steady == "krylov" || n.steady == "sparse_direct",
          "numerics.steady", "must be auto, null_space, long_horizon, krylov or sparse_direct");
  const DeviceConfig& d = c.device;
  require(d.L > 0.0 && d.w > 0.0 && d.t > 0.0, "device.L", "beam sizes must be positive");
  require(d.E > 0.0, "device.E", "must be positive");
  require(d.rho > 0.0, "device.rho", "must be positive");
  require(d.nu > 0.0 && d.nu < 0.5, "device.nu", "must lie in (0, 0.5)");
  require(d.d > 0.0, "device.d", "must be positive");
  require(d.kL > 0.0, "device.kL", "must be positive");
  require(d.normalization == "unit_mean_square" || d.normalization == "as_written" ||
              d.normalization == "max_amplitude",
          "device.normalization", "must be unit_mean_square, as_written or max_amplitude");
  require(d.B_direction.size() == 3, "device.B_direction", "must have three components");
  require(std::hypot(d.B_direction[0], d.B_direction[1], d.B_direction[2]) > 0.0,
          "device.B_direction", "must be nonzero");
  require(d.omega_orbital >= d.lambda_so && d.lambda_so >= 0.0, "device.omega_orbital",
          "must be at least lambda_so");
  if (c.experiment == "sweep") {
    require(!c.sweep.axes.empty() && c.sweep.axes.size() <= 2, "sweep.axes",
            "need one or two axes");
    static const std::set<std::string> names{"N", "tan_theta", "Gamma", "eta", "kappa", "Delta"};
    for (const auto& a : c.sweep.axes) {
      require(names.count(a.name) > 0, "sweep.axes", "unknown axis '" + a.name + "'");
      require(!a.values.empty(), "sweep.axes", "axis '" + a.name + "' has no values");
    }
    if (c.sweep.axes.size() == 2) {
      require(c.sweep.axes[0].name != c.sweep.axes[1].name, "sweep.axes", "axes must differ");
    }
    static const std::set<std::string> targets{"exact_squeezing", "xi2_linearized",
                                               "dephasing_moments", "optimal_squeezing",
                                               "collective_steady", "effective_steady"};
    require(targets.count(c.sweep.target) > 0, "sweep.target",
            "unknown target '" + c.sweep.target + "'");
  }
}

}  // namespace

ExperimentConfig parse_config(const Json& j) {
  if (!j.is_object()) throw ValidationError("config must be a JSON object");
  std::string id = "custom";
  if (j.contains("experiment")) {
    if (!j.at("experiment").is_string()) throw ValidationError("experiment: must be a string");
    id = j.at("experiment").get<std::string>();
  }
  ExperimentConfig c = default_config(id);
  Reader top(j, "");
  top.get("experiment", c.experiment);
  top.get("out_prefix", c.out_prefix);
  top.get("si", c.si);
  top.get("seed", c.seed);
  if (const Json* pj = top.child("physics")) {
    Reader r(*pj, "physics");
    PhysicsConfig& p = c.physics;
    r.get("N", p.N);
    r.get("tan_theta", p.tan_theta);
    r.get_optional("Omega1", p.Omega1);
    r.get_optional("Omega2", p.Omega2);
    r.get("g", p.g);
    r.get("Omega", p.Omega);
    r.get("Delta", p.Delta);
    r.get("kappa", p.kappa);
    r.get("omega_B", p.omega_B);
    r.get("gamma", p.gamma);
    r.get("Gamma", p.Gamma);
    r.get("n_max", p.n_max);
    r.get("model", p.model);
    r.get("tan_theta_grid", p.tan_theta_grid);
    r.get("N_list", p.N_list);
    r.get("Gamma_list", p.Gamma_list);
    r.get("eta_list", p.eta_list);
    r.get("initial_m", p.initial_m);
    r.get("initial_pairs", p.initial_pairs);
    r.finish();
  }
  if (const Json* nj = top.child("numerics")) {
    Reader r(*nj, "numerics");
    NumericsConfig& n = c.numerics;
    r.get("rtol", n.rtol);
    r.get("atol", n.atol);
    r.get("horizon", n.horizon);
    r.get("samples", n.samples);
    r.get("steady", n.steady);
    r.finish();
  }
  if (const Json* dj = top.child("device")) {
    Reader r(*dj, "device");
    DeviceConfig& d = c.device;
    r.get("L", d.L);
    r.get("w", d.w);
    r.get("t", d.t);
    r.get("E", d.E);
    r.get("rho", d.rho);
    r.get("nu", d.nu);
    r.get("d", d.d);
    r.get("kL", d.kL);
    r.get("normalization", d.normalization);
    r.get("B_direction", d.B_direction);
    r.get("gamma_s_B", d.gamma_s_B);
    r.get("lambda_so", d.lambda_so);
    r.get("omega_orbital", d.omega_orbital);
    r.finish();
  }
  if (const Json* sj = top.child("sweep")) {
    Reader r(*sj, "sweep");
    r.get("target", c.sweep.target);
    if (const Json* aj = r.child("axes")) {
      if (!aj->is_array()) throw ValidationError("sweep.axes: must be an array");
      c.sweep.axes.clear();
      for (const auto& a : *aj) {
        Reader ar(a, "sweep.axes[]");
        SweepAxis axis;
        ar.get("name", axis.name);
        ar.get("values", axis.values);
        ar.finish();
        c.sweep.axes.push_back(std::move(axis));
      }
    }
    r.finish();
  }
  top.finish();
  validate_config(c);
  return c;
}

Json to_json(const ExperimentConfig& c) {
  const PhysicsConfig& p = c.physics;
  Json phys = {{"N", p.N},
               {"tan_theta", p.tan_theta},
               {"g", p.g},
               {"Omega", p.Omega},
               {"Delta", p.Delta},
               {"kappa", p.kappa},
               {"omega_B", p.omega_B},
               {"gamma", p.gamma},
               {"Gamma", p.Gamma},
               {"n_max", p.n_max},
               {"model", p.model},
               {"tan_theta_grid", p.tan_theta_grid},
               {"N_list", p.N_list},
               {"Gamma_list", p.Gamma_list},
               {"eta_list", p.eta_list},
               {"initial_m", p.initial_m},
               {"initial_pairs", p.initial_pairs}};
  if (p.Omega1) phys["Omega1"] = *p.Omega1;
  if (p.Omega2) phys["Omega2"] = *p.Omega2;
  const NumericsConfig& n = c.numerics;
  const DeviceConfig& d = c.device;
  Json axes = Json::array();
  for (const auto& a : c.sweep.axes) axes.push_back({{"name", a.name}, {"values", a.values}});
  return {{"experiment", c.experiment},
          {"out_prefix", c.out_prefix},
          {"si", c.si},
          {"seed", c.seed},
          {"physics", phys},
          {"numerics",
           {{"rtol", n.rtol},
            {"atol", n.atol},
            {"horizon", n.horizon},
            {"samples", n.samples},
            {"steady", n.steady}}},
          {"device",
           {{"L", d.L},
            {"w", d.w},
            {"t", d.t},
            {"E", d.E},
            {"rho", d.rho},
            {"nu", d.nu},
            {"d", d.d},
            {"kL", d.kL},
            {"normalization", d.normalization},
            {"B_direction", d.B_direction},
            {"gamma_s_B", d.gamma_s_B},
            {"lambda_so", d.lambda_so},
            {"omega_orbital", d.omega_orbital}}},
          {"sweep", {{"target", c.sweep.target}, {"axes", axes}}}};
}

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

void Table::add_row(const std::vector<double>& values) {
  std::vector<std::string> row;
  row.reserve(values.size());
  for (double v : values) row.push_back(format_number(v));
  rows.push_back(std::move(row));
}

std::string to_csv(const Table& table) {
  std::string out;
  for (size_t i = 0; i < table.columns.size(); ++i) {
    if (i) out += ',';
    out += table.columns[i];
  }
  out += '\n';
  for (const auto& row : table.rows) {
    for (size_t i = 0; i < row.size(); ++i) {
      if (i) out += ',';
      out += row[i];
    }
    out += '\n';
  }
  return out;
}

namespace {

Json number_or_null(double v) { return std::isfinite(v) ? Json(v) : Json(nullptr); }

IntegratorOptions integrator_options(const NumericsConfig& n) {
  IntegratorOptions o;
  o.rtol = n.rtol;
  o.atol = n.atol;
  return o;
}

SteadyStrategy strategy_of(const std::string& s) {
  if (s == "null_space") return SteadyStrategy::kNullSpace;
  if (s == "long_horizon") return SteadyStrategy::kLongHorizon;
  if (s == "krylov") return SteadyStrategy::kKrylov;
  if (s == "sparse_direct") return SteadyStrategy::kSparseDirect;
  return SteadyStrategy::kAuto;
}

SteadyStateOptions steady_options(const NumericsConfig& n) {
  SteadyStateOptions o;
  o.strategy = strategy_of(n.steady);
  o.integrator = integrator_options(n);
  return o;
}

// Time column name and scale for the requested unit system.
struct TimeAxis {
  std::string column;
  double scale;
};

TimeAxis time_axis(const ExperimentConfig& c, bool collective) {
  if (!c.si) return {collective ? "t[1/gamma]" : "t[1/g]", 1.0};
  return {"t[s]", 1.0 / (collective ? kSiCollectiveRate : kSiCoupling)};
}

std::string truncation_message(double population, int n_max) {
  return "phonon population " + format_number(population) + " in level n_max = " +
         std::to_string(n_max) + " exceeds " + format_number(kTruncationTolerance) +
         "; rerun with a larger physics.n_max";
}

std::string label(const std::string& prefix, double v) { return prefix + "=" + format_number(v); }

double tail_mean(const std::vector<TrajectoryRecord>& r, double TrajectoryRecord::*field) {
  const size_t n = r.size();
  const size_t start = n - std::max<size_t>(1, n / 10);
  double acc = 0.0;
  for (size_t i = start; i < n; ++i) acc += r[i].*field;
  return acc / double(n - start);
}

void check_hygiene(const TrajectoryResult& tr, const std::string& what,
                   std::vector<std::string>& warnings) {
  double trace = 0.0, herm = 0.0;
  for (const auto& r : tr.records) {
    trace = std::max(trace, r.trace_error);
    herm = std::max(herm, r.hermiticity_error);
  }
  if (trace > 1e-8) warnings.push_back(what + ": trace drift " + format_number(trace));
  if (herm > 1e-9) warnings.push_back(what + ": hermiticity error " + format_number(herm));
  if (!tr.stats.renormalizations.empty()) {
    warnings.push_back(what + ": " + std::to_string(tr.stats.renormalizations.size()) +
                       " trace renormalizations");
  }
}

ExperimentResult run_fig2a(const ExperimentConfig& c) {
  const PhysicsConfig& p = c.physics;
  const NumericsConfig& n = c.numerics;
  const double theta = p.theta();
  const SiVParams params = SiVParams::from_effective(p.g, p.Omega, theta, p.Delta, p.omega_B, 0.0);
  ExperimentResult res;
  for (const auto& w : params.validate()) res.warnings.push_back(w);
  const EffectiveComparison cmp =
      validate_effective(params, p.N, p.kappa, p.n_max, n.horizon, n.samples,
                         integrator_options(n));
  const double rate = collective_rate(p.g, p.Omega, p.Delta, p.kappa);
  const CollectiveModel coll = build_collective_model(p.N, theta, rate);
  const TrajectoryResult tr =
      evolve(coll.model, pure_density(dicke_state(coll.spin.basis, -0.5 * p.N)), cmp.times,
             coll.observables, integrator_options(n));
  check_hygiene(tr, "collective", res.warnings);

  const TimeAxis ax = time_axis(c, false);
  Table t{"", {ax.column, "xi2_full[1]", "xi2_effective[1]", "xi2_collective[1]"}, {}};
  for (size_t i = 0; i < cmp.times.size(); ++i) {
    t.add_row({cmp.times[i] * ax.scale, cmp.xi2_full[i], cmp.xi2_effective[i], tr.records[i].xi2});
  }
  res.tables.push_back(std::move(t));
  if (cmp.max_truncation_population > kTruncationTolerance) {
    throw RuntimeFailure(truncation_message(cmp.max_truncation_population, p.n_max));
  }
  res.headline = {{"collective_rate[g]", rate},
                  {"steady_xi2_full", cmp.steady_xi2_full},
                  {"steady_xi2_effective", cmp.steady_xi2_effective},
                  {"steady_xi2_collective", tail_mean(tr.records, &TrajectoryRecord::xi2)},
                  {"steady_xi2_dark_state", exact_squeezing(p.N, theta).xi2},
                  {"steady_relative_deviation_full_vs_effective", cmp.steady_relative_deviation},
                  {"max_relative_deviation_full_vs_effective", cmp.max_relative_deviation},
                  {"max_upper_population", cmp.max_upper_population},
                  {"max_truncation_population", cmp.max_truncation_population}};
  return res;
}

ExperimentResult run_fig2b(const ExperimentConfig& c) {
  const PhysicsConfig& p = c.physics;
  const NumericsConfig& n = c.numerics;
  const double theta = p.theta();
  const EffectiveModel eff =
      build_effective_model(p.N, theta, p.g, p.Omega, p.Delta, p.kappa, p.n_max);
  const auto times = linear_grid(0.0, n.horizon, n.samples);
  std::vector<TrajectoryResult> runs(p.initial_m.size());
  for (size_t k = 0; k < p.initial_m.size(); ++k) {
    runs[k] = evolve(eff.model, eff.product_state(dicke_state(eff.spin.basis, p.initial_m[k])),
                     times, eff.observables, integrator_options(n));
  }
  ExperimentResult res;
  const TimeAxis ax = time_axis(c, false);
  Table t{"", {ax.column}, {}};
  for (double m : p.initial_m) t.columns.push_back(label("xi2_m", m) + "[1]");
  for (size_t i = 0; i < times.size(); ++i) {
    std::vector<double> row{times[i] * ax.scale};
    for (const auto& r : runs) row.push_back(r.records[i].xi2);
    t.add_row(row);
  }
  res.tables.push_back(std::move(t));
  Json steady = Json::object();
  double lo = INFINITY, hi = -INFINITY, trunc = 0.0;
  for (size_t k = 0; k < runs.size(); ++k) {
    check_hygiene(runs[k], label("m", p.initial_m[k]), res.warnings);
    const double x = runs[k].records.back().xi2;
    steady[label("m", p.initial_m[k])] = number_or_null(x);
    lo = std::min(lo, x);
    hi = std::max(hi, x);
    trunc = std::max(trunc, eff.truncation_population(runs[k].final_state));
  }
  if (trunc > kTruncationTolerance) {
    throw RuntimeFailure(truncation_message(trunc, p.n_max));
  }
  res.headline = {{"final_xi2", steady},
                  {"final_xi2_spread_relative", (hi - lo) / std::abs(lo)},
                  {"xi2_dark_state", exact_squeezing(p.N, theta).xi2}};
  return res;
}

ExperimentResult run_fig3(const ExperimentConfig& c) {
  const PhysicsConfig& p = c.physics;
  ExperimentResult res;
  Table t{"", {"tan_theta[1]", "xi2_numeric[1]", "xi2_analytic[1]"}, {}};
  double worst = 0.0;
  for (double tt : p.tan_theta_grid) {
    const double theta = std::atan(tt);
    const CollectiveModel m = build_collective_model(p.N, theta, p.gamma);
    const SteadyStateResult ss = steady_state(m.model, steady_options(c.numerics));
    const double num = measure(0.0, ss.rho, m.observables).xi2;
    const double ana = exact_squeezing(p.N, theta).xi2;
    worst = std::max(worst, std::abs(num - ana) / ana);
    t.add_row({tt, num, ana});
  }
  res.tables.push_back(std::move(t));
  res.headline = {{"max_relative_deviation", worst}};
  return res;
}

ExperimentResult run_fig4(const ExperimentConfig& c) {
  const PhysicsConfig& p = c.physics;
  const auto times = linear_grid(0.0, c.numerics.horizon, c.numerics.samples);
  const TimeAxis ax = time_axis(c, true);
  ExperimentResult res;
  Json finals = Json::object();
  for (double tt : p.tan_theta_grid) {
    const CollectiveModel m = build_collective_model(p.N, std::atan(tt), p.gamma);
    Table t{label("tan_theta", tt), {ax.column}, {}};
    std::vector<TrajectoryResult> runs;
    for (double mz : p.initial_m) {
      t.columns.push_back(label("xi2_m", mz) + "[1]");
      runs.push_back(evolve(m.model, pure_density(dicke_state(m.spin.basis, mz)), times,
                            m.observables, integrator_options(c.numerics)));
      check_hygiene(runs.back(), label("tan_theta", tt) + " " + label("m", mz), res.warnings);
    }
    for (size_t i = 0; i < times.size(); ++i) {
      std::vector<double> row{times[i] * ax.scale};
      for (const auto& r : runs) row.push_back(r.records[i].xi2);
      t.add_row(row);
    }
    Json f = Json::object();
    for (size_t k = 0; k < runs.size(); ++k) {
      f[label("m", p.initial_m[k])] = number_or_null(runs[k].records.back().xi2);
    }
    f["dark_state"] = exact_squeezing(p.N, std::atan(tt)).xi2;
    finals[label("tan_theta", tt)] = f;
    res.tables.push_back(std::move(t));
  }
  res.headline = {{"final_xi2", finals}};
  return res;
}

ExperimentResult run_fig5(const ExperimentConfig& c) {
  const PhysicsConfig& p = c.physics;
  const NumericsConfig& n = c.numerics;
  const double theta = p.theta();
  const EnsembleOps ops = build_ensemble_ops(p.N);
  const ObservableSet obs = ops.observables();
  const auto times = linear_grid(0.0, n.horizon, n.samples);
  const TimeAxis ax = time_axis(c, true);
  ExperimentResult res;
  Json per_gamma = Json::object();
  for (double G : p.Gamma_list) {
    const LindbladModel model = build_dephasing_model(ops, theta, p.gamma, G * p.gamma);
    const int jobs = static_cast<int>(p.initial_pairs.size());
    std::vector<TrajectoryResult> runs(jobs);
    std::vector<std::string> errors(jobs);
#pragma omp parallel for schedule(dynamic)
    for (int k = 0; k < jobs; ++k) {
      try {
        runs[k] = evolve(model, pure_density(lower_spin_state(p.N, p.initial_pairs[k])), times,
                         obs, integrator_options(n));
      } catch (const std::exception& e) {
        errors[k] = e.what();
      }
    }
    for (const auto& e : errors)
      if (!e.empty()) throw RuntimeFailure("fig5: " + e);
    Table t{label("Gamma", G), {ax.column}, {}};
    for (int k : p.initial_pairs) t.columns.push_back(label("xi2_S", 0.5 * p.N - k) + "[1]");
    for (int k : p.initial_pairs) t.columns.push_back(label("S2_S", 0.5 * p.N - k) + "[1]");
    for (size_t i = 0; i < times.size(); ++i) {
      std::vector<double> row{times[i] * ax.scale};
      for (const auto& r : runs) row.push_back(r.records[i].xi2);
      for (const auto& r : runs) row.push_back(r.records[i].s_squared);
      t.add_row(row);
    }
    res.tables.push_back(std::move(t));
    Json f = Json::object();
    double spread = 0.0;
    for (int k = 0; k < jobs; ++k) {
      check_hygiene(runs[k], label("Gamma", G) + " " + label("pairs", p.initial_pairs[k]),
                    res.warnings);
      const double x = runs[k].records.back().xi2;
      f[label("S", 0.5 * p.N - p.initial_pairs[k])] = number_or_null(x);
      for (int l = 0; l < k; ++l) {
        spread = std::max(spread, std::abs(x - runs[l].records.back().xi2));
      }
    }
    f["max_pairwise_difference"] = spread;
    per_gamma[label("Gamma", G)] = f;
  }
  res.headline = {{"final_xi2", per_gamma}};
  if (p.N % 2 == 0) res.headline["xi2_dark_state"] = exact_squeezing(p.N, theta).xi2;
  return res;
}

ExperimentResult run_fig6(const ExperimentConfig& c) {
  ExperimentResult res;
  for (int N : c.physics.N_list) {
    Table t{label("N", N), {"tan_theta[1]", "xi2_exact[1]", "xi2_linearized[1]"}, {}};
    for (double tt : c.physics.tan_theta_grid) {
      const double theta = std::atan(tt);
      const double ex = N % 2 == 0 ? exact_squeezing(N, theta).xi2 : NAN;
      t.add_row({tt, ex, xi2_linearized(N, theta)});
    }
    res.tables.push_back(std::move(t));
  }
  return res;
}

ExperimentResult run_fig7(const ExperimentConfig& c) {
  const PhysicsConfig& p = c.physics;
  const auto times = linear_grid(0.0, c.numerics.horizon, c.numerics.samples);
  const TimeAxis ax = time_axis(c, true);
  ExperimentResult res;
  Table a{"a", {ax.column}, {}};
  std::vector<std::vector<MomentState>> curves;
  for (double tt : p.tan_theta_grid) {
    a.columns.push_back(label("delta_sz_over_N_tan", tt) + "[1]");
    curves.push_back(moment_trajectories({p.N, std::atan(tt), p.gamma, 0.0}, times));
  }
  for (size_t i = 0; i < times.size(); ++i) {
    std::vector<double> row{times[i] * ax.scale};
    for (const auto& cv : curves) row.push_back(cv[i].delta_sz / p.N);
    a.add_row(row);
  }
  res.tables.push_back(std::move(a));
  Table b{"b",
          {"N[1]", "tan2_theta[1]", "xi2_opt[1]", "four_over_N[1]", "ratio[1]",
           "xi2_exact_min[1]"},
          {}};
  Json ratios = Json::object();
  for (int N : p.N_list) {
    const OptimalSqueezing o = optimal_squeezing(N);
    b.add_row({double(N), o.tan2_theta, o.xi2, o.asymptote, o.xi2 / o.asymptote, o.xi2_numeric});
    ratios[std::to_string(N)] = o.xi2 / o.asymptote;
  }
  res.tables.push_back(std::move(b));
  res.headline = {{"xi2_opt_times_N_over_4", ratios}};
  return res;
}

ExperimentResult run_fig8(const ExperimentConfig& c) {
  ExperimentResult res;
  for (int N : c.physics.N_list) {
    Table t{label("N", N), {"tan_theta[1]"}, {}};
    for (double eta : c.physics.eta_list) {
      t.columns.push_back(eta > 0.0 ? label("xi2_eta", eta) + "[1]" : "xi2_no_dephasing[1]");
    }
    for (double tt : c.physics.tan_theta_grid) {
      std::vector<double> row{tt};
      for (double eta : c.physics.eta_list) {
        const double G = eta > 0.0 ? 1.0 / eta : 0.0;
        row.push_back(steady_moments_dephasing({N, std::atan(tt), 1.0, G}).xi2);
      }
      t.add_row(row);
    }
    res.tables.push_back(std::move(t));
  }
  return res;
}

ModeNormalization normalization_of(const std::string& s) {
  if (s == "as_written") return ModeNormalization::kAsWritten;
  if (s == "max_amplitude") return ModeNormalization::kMaxAmplitude;
  return ModeNormalization::kUnitMeanSquare;
}

ExperimentResult run_beam(const ExperimentConfig& c) {
  const DeviceConfig& d = c.device;
  const BeamGeometry geom{d.L, d.w, d.t};
  const Material mat{d.E, d.rho, d.nu};
  StrainSusceptibilities s;
  s.d = d.d;
  const DeviceReport rep = device_report(geom, mat, s, d.kL, normalization_of(d.normalization));
  ExperimentResult res;
  res.warnings = rep.warnings;
  Table t{"", {"orientation", "transverse[1]", "g_over_2pi[Hz]", "g_over_g_transverse[1]"}, {}};
  const auto os = all_orientations();
  const double gt = rep.coupling[3];
  for (size_t i = 0; i < os.size(); ++i) {
    t.rows.push_back({orientation_name(os[i]), is_transverse(os[i]) ? "1" : "0",
                      format_number(rep.coupling[i] / (2 * kPi)),
                      format_number(rep.coupling[i] / gt)});
  }
  res.tables.push_back(std::move(t));
  Json eps = Json::object();
  for (const auto& [name, norm] : {std::pair{"as_written", ModeNormalization::kAsWritten},
                                   std::pair{"unit_mean_square", ModeNormalization::kUnitMeanSquare},
                                   std::pair{"max_amplitude", ModeNormalization::kMaxAmplitude}}) {
    StrainOptions so;
    so.normalization = norm;
    eps[name] = zero_point_strain(geom, mat, rep.mode, so);
  }
  res.headline = {{"kL_requested", d.kL},
                  {"kL_root", rep.mode.kL},
                  {"k[1/m]", rep.mode.k},
                  {"omega_over_2pi[Hz]", rep.mode.omega / (2 * kPi)},
                  {"epsilon0", rep.epsilon0},
                  {"normalization", d.normalization},
                  {"epsilon0_by_normalization", eps},
                  {"g_transverse_over_2pi[Hz]", gt / (2 * kPi)},
                  {"g_axial_over_2pi[Hz]", rep.coupling[0] / (2 * kPi)},
                  {"g_axial_over_g_transverse", rep.coupling[0] / gt}};
  return res;
}

ExperimentResult run_zeeman(const ExperimentConfig& c) {
  const DeviceConfig& d = c.device;
  ZeemanParams zp = ZeemanParams::from_orbital_splitting(d.omega_orbital, d.lambda_so);
  const Eigen::Vector3d dir =
      Eigen::Vector3d(d.B_direction[0], d.B_direction[1], d.B_direction[2]).normalized();
  const Eigen::Vector3d b = dir * d.gamma_s_B;  // gamma_s = 1
  ExperimentResult res;
  Table t{"",
          {"orientation", "bz_over_b[1]", "d41_numeric_over_2pi[GHz]", "d32_numeric_over_2pi[GHz]",
           "d41_closed_over_2pi[GHz]", "d32_closed_over_2pi[GHz]", "d41_literature_over_2pi[GHz]",
           "d32_literature_over_2pi[GHz]", "d41_reference_over_2pi[GHz]",
           "d32_reference_over_2pi[GHz]"},
          {}};
  const double ghz = 2 * kPi * 1e9;
  double worst_closed = 0.0;
  Json rows = Json::object();
  for (Orientation o : all_orientations()) {
    const Eigen::Vector3d bi = crystal_to_internal(b, o);
    const auto num = eigenvalues_numeric(zp, bi);
    const auto cf = eigenvalues_closed_form(zp, bi);
    const auto pub = eigenvalues_literature_form(zp, bi);
    for (int k = 0; k < 4; ++k) {
      worst_closed = std::max(worst_closed, std::abs(num[k] - cf[k]) / std::abs(num[3]));
    }
    const Splittings sn = splittings_from(num), sc = splittings_from(cf), sp = splittings_from(pub);
    const bool aligned = std::abs(std::abs(bi.z()) - b.norm()) < 1e-9 * b.norm();
    const double p41 = aligned ? 66.0 : 53.0, p32 = aligned ? 26.0 : 39.0;
    t.rows.push_back({orientation_name(o), format_number(bi.z() / b.norm()),
                      format_number(sn.delta_41 / ghz), format_number(sn.delta_32 / ghz),
                      format_number(sc.delta_41 / ghz), format_number(sc.delta_32 / ghz),
                      format_number(sp.delta_41 / ghz), format_number(sp.delta_32 / ghz),
                      format_number(p41), format_number(p32)});
    rows[orientation_name(o)] = {{"aligned", aligned},
                                 {"d41_numeric_GHz", sn.delta_41 / ghz},
                                 {"d32_numeric_GHz", sn.delta_32 / ghz},
                                 {"d41_literature_form_GHz", sp.delta_41 / ghz},
                                 {"d32_literature_form_GHz", sp.delta_32 / ghz},
                                 {"d41_reference_GHz", p41},
                                 {"d32_reference_GHz", p32}};
  }
  res.tables.push_back(std::move(t));
  res.headline = {{"upsilon_over_2pi[GHz]", zp.upsilon() / ghz},
                  {"closed_form_max_relative_error", worst_closed},
                  {"orientations", rows}};
  return res;
}

ExperimentResult run_custom(const ExperimentConfig& c) {
  const PhysicsConfig& p = c.physics;
  const NumericsConfig& n = c.numerics;
  const double theta = p.theta();
  const auto times = linear_grid(0.0, n.horizon, n.samples);
  const double m0 = p.initial_m.empty() ? -0.5 * p.N : p.initial_m.front();
  ExperimentResult res;
  std::optional<LindbladModel> model;
  ObservableSet obs;
  DensityMatrix rho0;
  bool collective_units = true;
  if (p.model == "collective") {
    CollectiveModel m = build_collective_model(p.N, theta, p.gamma);
    rho0 = pure_density(dicke_state(m.spin.basis, m0));
    model.emplace(std::move(m.model));
    obs = std::move(m.observables);
  } else if (p.model == "effective") {
    EffectiveModel m = build_effective_model(p.N, theta, p.g, p.Omega, p.Delta, p.kappa, p.n_max);
    rho0 = m.product_state(dicke_state(m.spin.basis, m0));
    model.emplace(std::move(m.model));
    obs = std::move(m.observables);
    collective_units = false;
  } else if (p.model == "full") {
    const SiVParams sp = SiVParams::from_effective(p.g, p.Omega, theta, p.Delta, p.omega_B, 0.0);
    for (const auto& w : sp.validate()) res.warnings.push_back(w);
    FullSivModel m = build_full_model(sp, p.N, p.kappa, p.n_max);
    rho0 = m.initial_state();
    model.emplace(std::move(m.model));
    obs = std::move(m.observables);
    collective_units = false;
  } else {
    const EnsembleOps ops = build_ensemble_ops(p.N);
    const int pairs = p.initial_pairs.empty() ? 0 : p.initial_pairs.front();
    rho0 = pure_density(lower_spin_state(p.N, pairs));
    model.emplace(build_dephasing_model(ops, theta, p.gamma, p.Gamma * p.gamma));
    obs = ops.observables();
  }
  const TrajectoryResult tr = evolve(*model, rho0, times, obs, integrator_options(n));
  check_hygiene(tr, p.model, res.warnings);
  const TimeAxis ax = time_axis(c, collective_units);
  Table t{"", {ax.column, "xi2[1]", "mean_sz[1]", "sx2[1]", "trace_error[1]"}, {}};
  for (const auto& r : tr.records) {
    t.add_row({r.t * ax.scale, r.xi2, r.mean_sz, r.var_sx, r.trace_error});
  }
  res.tables.push_back(std::move(t));
  res.headline = {{"final_xi2", number_or_null(tr.records.back().xi2)},
                  {"accepted_steps", tr.stats.accepted},
                  {"rejected_steps", tr.stats.rejected}};
  if (!model->time_dependent()) {
    const SteadyStateResult ss = steady_state(*model, steady_options(n));
    res.headline["steady_xi2"] = number_or_null(measure(0.0, ss.rho, obs).xi2);
    res.headline["steady_residual"] = ss.residual;
  }
  return res;
}

}  // namespace

ExperimentResult run_sweep(const ExperimentConfig& c) {
  std::vector<SweepAxis> axes = c.sweep.axes;
  for (auto& a : axes) {
    std::sort(a.values.begin(), a.values.end());
    a.values.erase(std::unique(a.values.begin(), a.values.end()), a.values.end());
  }
  const size_t n0 = axes[0].values.size();
  const size_t n1 = axes.size() > 1 ? axes[1].values.size() : 1;
  const int jobs = static_cast<int>(n0 * n1);
  const std::string& target = c.sweep.target;
  const std::vector<std::string> outputs =
      target == "optimal_squeezing" ? std::vector<std::string>{"xi2_opt[1]", "xi2_exact_min[1]"}
                                    : std::vector<std::string>{"xi2[1]"};
  std::vector<std::vector<double>> values(jobs);
  std::vector<std::string> status(jobs, "ok");

#pragma omp parallel for schedule(dynamic)
  for (int job = 0; job < jobs; ++job) {
    PhysicsConfig p = c.physics;
    double eta = p.Gamma > 0.0 ? p.gamma / p.Gamma : 0.0;
    const size_t idx[2] = {job / n1, job % n1};
    for (size_t a = 0; a < axes.size(); ++a) {
      const double v = axes[a].values[idx[a]];
      const std::string& name = axes[a].name;
      if (name == "N") p.N = static_cast<int>(std::lround(v));
      if (name == "tan_theta") p.tan_theta = v;
      if (name == "Gamma") eta = v > 0.0 ? 1.0 / v : 0.0;
      if (name == "eta") eta = v;
      if (name == "kappa") p.kappa = v;
      if (name == "Delta") p.Delta = v;
    }
    try {
      if (p.N < 1) throw ValidationError("N must be >= 1");
      validate_tan(p.tan_theta, "tan_theta");
      const double theta = std::atan(p.tan_theta);
      std::vector<double> out;
      if (target == "exact_squeezing") {
        out = {exact_squeezing(p.N, theta).xi2};
      } else if (target == "xi2_linearized") {
        out = {xi2_linearized(p.N, theta)};
      } else if (target == "dephasing_moments") {
        out = {steady_moments_dephasing({p.N, theta, 1.0, eta > 0.0 ? 1.0 / eta : 0.0}).xi2};
      } else if (target == "optimal_squeezing") {
        const OptimalSqueezing o = optimal_squeezing(p.N);
        out = {o.xi2, o.xi2_numeric};
      } else if (target == "collective_steady") {
        const CollectiveModel m = build_collective_model(p.N, theta, p.gamma);
        out = {measure(0.0, steady_state(m.model, steady_options(c.numerics)).rho,
                       m.observables).xi2};
      } else {
        const EffectiveModel m =
            build_effective_model(p.N, theta, p.g, p.Omega, p.Delta, p.kappa, p.n_max);
        out = {measure(0.0, steady_state(m.model, steady_options(c.numerics)).rho,
                       m.observables).xi2};
      }
      values[job] = out;
    } catch (const std::exception& e) {
      values[job] = std::vector<double>(outputs.size(), NAN);
      status[job] = std::string("error: ") + e.what();
    }
  }

  static const std::map<std::string, std::string> units{
      {"N", "1"}, {"tan_theta", "1"}, {"Gamma", "gamma"}, {"eta", "1"}, {"kappa", "g"},
      {"Delta", "g"}};
  Table t{"", {}, {}};
  for (const auto& a : axes) t.columns.push_back(a.name + "[" + units.at(a.name) + "]");
  for (const auto& o : outputs) t.columns.push_back(o);
  t.columns.push_back("status");
  int failures = 0;
  for (int job = 0; job < jobs; ++job) {
    std::vector<std::string> row;
    row.push_back(format_number(axes[0].values[job / n1]));
    if (axes.size() > 1) row.push_back(format_number(axes[1].values[job % n1]));
    for (double v : values[job]) row.push_back(format_number(v));
    std::string s = status[job];
    std::replace(s.begin(), s.end(), ',', ';');
    row.push_back(s);
    if (status[job] != "ok") ++failures;
    t.rows.push_back(std::move(row));
  }
  ExperimentResult res;
  res.tables.push_back(std::move(t));
  res.headline = {{"target", target}, {"rows", jobs}, {"failed_rows", failures}};
  return res;
}

ExperimentResult run_experiment(const ExperimentConfig& c) {
  validate_config(c);
  const std::string& id = c.experiment;
  if (id == "fig2a") return run_fig2a(c);
  if (id == "fig2b") return run_fig2b(c);
  if (id == "fig3") return run_fig3(c);
  if (id == "fig4") return run_fig4(c);
  if (id == "fig5") return run_fig5(c);
  if (id == "fig6") return run_fig6(c);
  if (id == "fig7") return run_fig7(c);
  if (id == "fig8") return run_fig8(c);
  if (id == "beam") return run_beam(c);
  if (id == "zeeman") return run_zeeman(c);
  if (id == "sweep") return run_sweep(c);
  if (id == "custom") return run_custom(c);
  throw ValidationError("experiment: unknown id '" + id + "'");
}

Json summary_json(const ExperimentConfig& config, const ExperimentResult& result) {
  Json tables = Json::array();
  for (const auto& t : result.tables) {
    tables.push_back({{"name", t.name}, {"columns", t.columns}, {"rows", t.rows.size()}});
  }
  return {{"experiment", config.experiment},
          {"headline", result.headline},
          {"warnings", result.warnings},
          {"tables", tables},
          {"config", to_json(config)}};
}

std::vector<std::filesystem::path> write_outputs(const ExperimentConfig& config,
                                                 const ExperimentResult& result,
                                                 const std::filesystem::path& out_dir) {
  std::filesystem::create_directories(out_dir);
  const std::string prefix = config.out_prefix.empty() ? config.experiment : config.out_prefix;
  std::vector<std::filesystem::path> written;
  auto write = [&](const std::filesystem::path& path, const std::string& text) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw RuntimeFailure("cannot write " + path.string());
    f << text;
    written.push_back(path);
  };
  for (const auto& t : result.tables) {
    const std::string name = t.name.empty() ? prefix : prefix + "_" + t.name;
    write(out_dir / (name + ".csv"), to_csv(t));
  }
  write(out_dir / (prefix + "_summary.json"), summary_json(config, result).dump(2) + "\n");
  return written;
}

}  // namespace sivsq
