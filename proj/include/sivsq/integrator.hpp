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

// Adaptive Dormand-Prince 5(4) integration of Lindblad models with
// observable recording at requested sample times.

#include <functional>
#include <limits>
#include <optional>
#include <vector>

#include "sivsq/kernels.hpp"
#include "sivsq/lindblad.hpp"

namespace sivsq {

struct IntegratorOptions {
  double rtol = 1e-8;
  double atol = 1e-10;
  double initial_step = 0.0;  // 0 selects a step from the initial derivative
  double max_step = std::numeric_limits<double>::infinity();
  long max_steps = 100'000'000;
  // trace drift beyond this at a sample time triggers a logged renormalization
  double renormalize_threshold = 1e-8;
};

// Raw integration: calls on_sample(t, rho) at every time in `times`
// (ascending, first >= t0). rho is advanced in place.
struct IntegrationStats {
  long accepted = 0;
  long rejected = 0;
  long rhs_evaluations = 0;
  std::vector<std::pair<double, double>> renormalizations;  // (t, trace drift)
};

IntegrationStats integrate(const LiouvillianKernel& kernel, DensityMatrix& rho, double t0,
                           const std::vector<double>& times, const IntegratorOptions& options,
                           const std::function<void(double, DensityMatrix&)>& on_sample);

// Operators whose expectations are recorded along a trajectory.
struct ObservableSet {
  int particles = 0;
  SparseCMatrix s_z;
  SparseCMatrix s_x;
  std::optional<SparseCMatrix> phonon_number;
  std::optional<SparseCMatrix> s_squared;
  bool track_spectrum = false;  // min eigenvalue at every sample (costly)
};

struct TrajectoryRecord {
  double t;
  double xi2;  // NaN when <Sz> vanishes
  double mean_sz;
  double var_sx;
  double phonon_number;  // NaN when not tracked
  double s_squared;      // NaN when not tracked
  double trace_error;
  double hermiticity_error;
  double min_eigenvalue;  // NaN when not tracked
};

struct TrajectoryResult {
  std::vector<double> times;
  std::vector<TrajectoryRecord> records;
  DensityMatrix final_state;
  IntegrationStats stats;
};

TrajectoryResult evolve(const LindbladModel& model, const DensityMatrix& rho0,
                        const std::vector<double>& times, const ObservableSet& observables,
                        const IntegratorOptions& options = {});

TrajectoryRecord measure(double t, const DensityMatrix& rho, const ObservableSet& observables);

std::vector<double> linear_grid(double t0, double t1, int samples);

}  // namespace sivsq
