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

#include "sivsq/integrator.hpp"

#include <algorithm>
#include <cmath>
#include <iostream>
#include <string>

#include "sivsq/collective_spin.hpp"

namespace sivsq {

namespace {

// Dormand-Prince 5(4) tableau.
constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                 a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                 a64 = 49.0 / 176, a65 = -5103.0 / 18656;
constexpr double a71 = 35.0 / 384, a73 = 500.0 / 1113, a74 = 125.0 / 192,
                 a75 = -2187.0 / 6784, a76 = 11.0 / 84;
constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                 e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;

double error_norm(const CMatrix& err, const CMatrix& y0, const CMatrix& y1,
                  const IntegratorOptions& o) {
  double worst = 0.0;
  const Eigen::Index n = err.size();
  const Complex* e = err.data();
  const Complex* a = y0.data();
  const Complex* b = y1.data();
  for (Eigen::Index i = 0; i < n; ++i) {
    const double scale = o.atol + o.rtol * std::max(std::abs(a[i]), std::abs(b[i]));
    worst = std::max(worst, std::abs(e[i]) / scale);
  }
  return worst;
}

}  // namespace

IntegrationStats integrate(const LiouvillianKernel& kernel, DensityMatrix& rho, double t0,
                           const std::vector<double>& times, const IntegratorOptions& options,
                           const std::function<void(double, DensityMatrix&)>& on_sample) {
  IntegrationStats stats;
  const int n = kernel.dim();
  if (rho.rows() != n || rho.cols() != n) {
    throw ValidationError("initial state dimension does not match the model");
  }
  for (size_t i = 0; i < times.size(); ++i) {
    if (times[i] < t0 || (i > 0 && times[i] < times[i - 1])) {
      throw ValidationError("sample times must be ascending and start at or after t0");
    }
  }

  CMatrix k1(n, n), k2(n, n), k3(n, n), k4(n, n), k5(n, n), k6(n, n), k7(n, n);
  CMatrix stage(n, n), y_new(n, n), err(n, n);
  auto f = [&](double t, const CMatrix& y, CMatrix& out) {
    kernel.apply(t, y, out);
    ++stats.rhs_evaluations;
  };

  double t = t0;
  f(t, rho, k1);

  double h = options.initial_step;
  if (h <= 0.0) {
    const double d0 = rho.cwiseAbs().maxCoeff();
    const double d1 = k1.cwiseAbs().maxCoeff();
    h = (d1 > 0.0) ? 0.01 * std::max(d0, 1e-5) / d1 : 1e-3;
    h = std::min(h, 1.0);
  }
  h = std::min(h, options.max_step);
  double err_old = 1e-4;

  auto sample = [&](double ts) {
    const Complex tr = rho.trace();
    const double drift = std::abs(tr - 1.0);
    if (drift > options.renormalize_threshold) {
      rho /= tr;
      stats.renormalizations.emplace_back(ts, drift);
      std::clog << "sivsq: renormalized trace at t=" << ts << " (drift " << drift << ")\n";
      f(t, rho, k1);
    }
    on_sample(ts, rho);
  };

  size_t next = 0;
  while (next < times.size() && times[next] <= t) sample(times[next++]);

  long steps = 0;
  while (next < times.size()) {
    const double target = times[next];
    bool hit_target = false;
    double step = h;
    if (t + step >= target) {
      step = target - t;
      hit_target = true;
    }
    if (step < 1e-14 * std::max(1.0, std::abs(t))) {
      if (hit_target) {
        // Sample time coincides with t up to round-off.
        t = target;
        sample(times[next++]);
        continue;
      }
      throw IntegrationError("step size underflow at t = " + std::to_string(t), t);
    }
    if (++steps > options.max_steps) {
      throw IntegrationError("step budget exhausted at t = " + std::to_string(t), t);
    }

    stage = rho + step * a21 * k1;
    f(t + c2 * step, stage, k2);
    stage = rho + step * (a31 * k1 + a32 * k2);
    f(t + c3 * step, stage, k3);
    stage = rho + step * (a41 * k1 + a42 * k2 + a43 * k3);
    f(t + c4 * step, stage, k4);
    stage = rho + step * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4);
    f(t + c5 * step, stage, k5);
    stage = rho + step * (a61 * k1 + a62 * k2 + a63 * k3 + a64 * k4 + a65 * k5);
    f(t + step, stage, k6);
    y_new = rho + step * (a71 * k1 + a73 * k3 + a74 * k4 + a75 * k5 + a76 * k6);
    f(t + step, y_new, k7);
    err = step * (e1 * k1 + e3 * k3 + e4 * k4 + e5 * k5 + e6 * k6 + e7 * k7);

    const double e = error_norm(err, rho, y_new, options);
    if (!std::isfinite(e)) {
      ++stats.rejected;
      h = 0.1 * step;
      continue;
    }
    // PI step control (Hairer-Wanner, beta = 0.04)
    double fac = std::pow(std::max(e, 1e-16), 0.17) / std::pow(err_old, 0.04);
    fac = std::clamp(fac / 0.9, 0.2, 10.0);
    if (e <= 1.0) {
      ++stats.accepted;
      err_old = std::max(e, 1e-4);
      t = hit_target ? target : t + step;
      rho.swap(y_new);
      k1.swap(k7);
      const double proposal = step / fac;
      h = hit_target ? std::max(h, proposal) : proposal;
      h = std::min(h, options.max_step);
      while (next < times.size() && times[next] <= t) sample(times[next++]);
    } else {
      ++stats.rejected;
      h = step / std::min(10.0, std::pow(e, 0.17) / 0.9);
    }
  }
  return stats;
}

TrajectoryRecord measure(double t, const DensityMatrix& rho, const ObservableSet& obs) {
  TrajectoryRecord r{};
  r.t = t;
  const double nan = std::numeric_limits<double>::quiet_NaN();
  const double tr = rho.trace().real();
  r.mean_sz = expectation(rho, obs.s_z).real() / tr;
  const CMatrix sx_rho = obs.s_x * rho;
  r.var_sx = expectation(sx_rho, obs.s_x).real() / tr;
  r.xi2 = std::abs(r.mean_sz) > 1e-9 * obs.particles
              ? obs.particles * r.var_sx / (r.mean_sz * r.mean_sz)
              : nan;
  r.phonon_number = obs.phonon_number ? expectation(rho, *obs.phonon_number).real() / tr : nan;
  r.s_squared = obs.s_squared ? expectation(rho, *obs.s_squared).real() / tr : nan;
  const DensityDiagnostics d = check_density_matrix(rho, obs.track_spectrum);
  r.trace_error = d.trace_error;
  r.hermiticity_error = d.hermiticity_error;
  r.min_eigenvalue = d.min_eigenvalue;
  return r;
}

TrajectoryResult evolve(const LindbladModel& model, const DensityMatrix& rho0,
                        const std::vector<double>& times, const ObservableSet& observables,
                        const IntegratorOptions& options) {
  const LiouvillianKernel kernel(model);
  TrajectoryResult result;
  DensityMatrix rho = rho0;
  const double t0 = times.empty() ? 0.0 : std::min(0.0, times.front());
  result.stats = integrate(kernel, rho, t0, times, options, [&](double t, DensityMatrix& r) {
    result.times.push_back(t);
    result.records.push_back(measure(t, r, observables));
  });
  result.final_state = std::move(rho);
  return result;
}

std::vector<double> linear_grid(double t0, double t1, int samples) {
  if (samples < 2) return {t0};
  std::vector<double> g(samples);
  for (int i = 0; i < samples; ++i) g[i] = t0 + (t1 - t0) * i / (samples - 1);
  g.back() = t1;
  return g;
}

}  // namespace sivsq
