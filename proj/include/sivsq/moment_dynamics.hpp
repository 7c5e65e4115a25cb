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

// Linearized moment equations around the -z polarized state
// (delta_Sz = Sz + N/2), their closed-form relaxation, and the steady
// squeezing estimates with and without single-spin dephasing.

#include <limits>
#include <vector>

namespace sivsq {

struct MomentParams {
  int particles;
  double theta;
  double gamma;        // collective rate
  double Gamma = 0.0;  // single-spin dephasing rate

  // gamma / Gamma; infinite without dephasing
  double eta() const {
    return Gamma > 0.0 ? gamma / Gamma : std::numeric_limits<double>::infinity();
  }
};

void validate(const MomentParams& p);

// 2 N gamma cos(2 theta)
double gamma_eff(const MomentParams& p);

struct MomentState {
  double t;
  double delta_sz;  // <Sz> + N/2
  double sx2;       // <Sx^2>
};

struct MomentInitial {
  double delta_sz = 0.0;
  double sx2 = -1.0;  // negative selects the coherent-state value N/4
};

// Exponential relaxation at gamma_eff towards
//   delta_sz -> sin^2(theta) / cos(2 theta),
//   sx2      -> N (1 - sin(2 theta)) / (4 cos(2 theta)).
// Dephasing-free only; Gamma must be 0.
std::vector<MomentState> moment_trajectories(const MomentParams& p, const std::vector<double>& times,
                                             const MomentInitial& initial = {});

// Right-hand side of the linearized equations (d delta_sz/dt, d sx2/dt).
std::pair<double, double> moment_rhs(const MomentParams& p, double delta_sz, double sx2);

// N^2 (1 - sin 2t) cos 2t / (N cos 2t - 2 sin^2 t)^2
double xi2_linearized(int particles, double theta);

struct DephasingMoments {
  double delta_sz;
  double sx2;
  double xi2;  // N sx2 / (N/2 - delta_sz)^2
};

DephasingMoments steady_moments_dephasing(const MomentParams& p);

struct OptimalSqueezing {
  double tan2_theta;  // N / (N + 10)
  double theta;
  double xi2;        // xi2_linearized at theta
  double asymptote;  // 4 / N
  // Exact dark-state squeezing minimized over 0 < tan^2 <= N/(N+10)
  // (golden section). NaN for odd N.
  double theta_numeric;
  double xi2_numeric;
};

OptimalSqueezing optimal_squeezing(int particles);

}  // namespace sivsq
