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

// Builders for the effective spin-phonon model and the collective
// (phonon-eliminated) model. Rates and couplings are in units of g.

#include "sivsq/boson.hpp"
#include "sivsq/collective_spin.hpp"
#include "sivsq/integrator.hpp"

namespace sivsq {

struct EffectiveModel {
  LindbladModel model;
  SpinOperators spin;
  FockBasis fock;
  double coupling;  // g Omega / Delta
  ObservableSet observables;

  // spin state (x) |n>
  DensityMatrix product_state(const CVector& spin_state, int phonons = 0) const;
  // Reduced spin density matrix (partial trace over the phonon).
  DensityMatrix spin_part(const DensityMatrix& rho) const;
  // Population of the highest retained Fock level.
  double truncation_population(const DensityMatrix& rho) const;
};

// H = (g Omega / Delta) (a^dag D_- + a D_+), jump (1 (x) a, kappa), in the
// total-spin sector S = N/2 unless `spin_basis` is given.
EffectiveModel build_effective_model(int particles, double theta, double g, double omega,
                                     double delta, double kappa, int n_max);
EffectiveModel build_effective_model(const SpinBasis& spin_basis, double theta, double g,
                                     double omega, double delta, double kappa, int n_max);

struct CollectiveModel {
  LindbladModel model;
  SpinOperators spin;
  double gamma;
  ObservableSet observables;
};

// H = 0, single jump (D_-, gamma).
CollectiveModel build_collective_model(int particles, double theta, double gamma);
CollectiveModel build_collective_model(const SpinBasis& spin_basis, double theta, double gamma);

// gamma = g^2 Omega^2 / (Delta^2 kappa)
double collective_rate(double g, double omega, double delta, double kappa);

// theta from the drive amplitudes: sin(theta) = Omega1 / sqrt(Omega1^2 + Omega2^2).
double mixing_angle(double omega1, double omega2);

// Warning threshold for Fock truncation (fraction of population in n_max).
inline constexpr double kTruncationTolerance = 1e-6;

}  // namespace sivsq
