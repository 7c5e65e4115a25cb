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

#include "sivsq/moment_dynamics.hpp"

#include <cmath>

#include "sivsq/analytic_steady_state.hpp"
#include "sivsq/types.hpp"

namespace sivsq {

namespace {

void check_theta(double theta) {
  if (!(theta >= 0.0) || !(std::tan(theta) < 1.0)) {
    throw ValidationError("tan(theta) must lie in [0, 1)");
  }
}

double fixed_delta_sz(double theta) {
  const double s = std::sin(theta);
  return s * s / std::cos(2 * theta);
}

double fixed_sx2(int n, double theta) {
  return n * (1.0 - std::sin(2 * theta)) / (4.0 * std::cos(2 * theta));
}

}  // namespace

void validate(const MomentParams& p) {
  if (p.particles < 1) throw ValidationError("particle count must be positive");
  if (!(p.gamma > 0.0)) throw ValidationError("gamma must be positive");
  if (!(p.Gamma >= 0.0)) throw ValidationError("Gamma must be non-negative");
  check_theta(p.theta);
}

double gamma_eff(const MomentParams& p) {
  validate(p);
  return 2.0 * p.particles * p.gamma * std::cos(2 * p.theta);
}

std::pair<double, double> moment_rhs(const MomentParams& p, double delta_sz, double sx2) {
  const double rate = gamma_eff(p);
  return {-rate * (delta_sz - fixed_delta_sz(p.theta)),
          -rate * (sx2 - fixed_sx2(p.particles, p.theta))};
}

std::vector<MomentState> moment_trajectories(const MomentParams& p, const std::vector<double>& times,
                                             const MomentInitial& initial) {
  const double rate = gamma_eff(p);
  if (p.Gamma != 0.0) {
    throw ValidationError("moment trajectories are only available without dephasing");
  }
  const double dz_inf = fixed_delta_sz(p.theta);
  const double sx_inf = fixed_sx2(p.particles, p.theta);
  const double dz0 = initial.delta_sz;
  const double sx0 = initial.sx2 < 0.0 ? p.particles / 4.0 : initial.sx2;
  std::vector<MomentState> out;
  out.reserve(times.size());
  for (double t : times) {
    const double decay = std::exp(-rate * t);
    out.push_back({t, dz_inf + (dz0 - dz_inf) * decay, sx_inf + (sx0 - sx_inf) * decay});
  }
  return out;
}

double xi2_linearized(int particles, double theta) {
  check_theta(theta);
  const double n = particles;
  const double c2 = std::cos(2 * theta);
  const double s = std::sin(theta);
  const double denom = n * c2 - 2 * s * s;
  return n * n * (1.0 - std::sin(2 * theta)) * c2 / (denom * denom);
}

DephasingMoments steady_moments_dephasing(const MomentParams& p) {
  validate(p);
  const double n = p.particles;
  const double c2 = std::cos(2 * p.theta);
  const double one_minus_s2 = 1.0 - std::sin(2 * p.theta);
  DephasingMoments m{};
  m.delta_sz = fixed_delta_sz(p.theta);
  const double eta = p.eta();
  if (std::isinf(eta)) {
    m.sx2 = n * one_minus_s2 / (4.0 * c2);
  } else {
    const double ne = n * eta;
    m.sx2 = (n / 4.0) * (ne * one_minus_s2 + 4.0) / (ne * c2 + 4.0);
  }
  const double mean = n / 2.0 - m.delta_sz;
  m.xi2 = n * m.sx2 / (mean * mean);
  return m;
}

OptimalSqueezing optimal_squeezing(int particles) {
  if (particles < 2) throw ValidationError("optimal squeezing requires N >= 2");
  OptimalSqueezing o{};
  const double n = particles;
  o.tan2_theta = n / (n + 10.0);
  o.theta = std::atan(std::sqrt(o.tan2_theta));
  o.xi2 = xi2_linearized(particles, o.theta);
  o.asymptote = 4.0 / n;
  o.theta_numeric = std::numeric_limits<double>::quiet_NaN();
  o.xi2_numeric = std::numeric_limits<double>::quiet_NaN();
  if (particles % 2 == 0) {
    auto f = [&](double th) { return exact_squeezing(particles, th).xi2; };
    const double golden = (std::sqrt(5.0) - 1.0) / 2.0;
    double lo = 0.0, hi = o.theta;
    double x1 = hi - golden * (hi - lo), x2 = lo + golden * (hi - lo);
    double f1 = f(x1), f2 = f(x2);
    while (hi - lo > 1e-10) {
      if (f1 < f2) {
        hi = x2;
        x2 = x1;
        f2 = f1;
        x1 = hi - golden * (hi - lo);
        f1 = f(x1);
      } else {
        lo = x1;
        x1 = x2;
        f1 = f2;
        x2 = lo + golden * (hi - lo);
        f2 = f(x2);
      }
    }
    const double f_hi = f(o.theta);
    const double mid = 0.5 * (lo + hi);
    const double f_mid = f(mid);
    if (f_hi <= f_mid) {
      o.theta_numeric = o.theta;
      o.xi2_numeric = f_hi;
    } else {
      o.theta_numeric = mid;
      o.xi2_numeric = f_mid;
    }
  }
  return o;
}

}  // namespace sivsq
