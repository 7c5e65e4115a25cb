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

// Two-level ensemble on the full 2^N space: collective jump D_- plus local
// sigma_z dephasing on every spin. Qubit basis per spin: index 0 = |1>
// (down), index 1 = |2> (up); spin j sits in tensor slot j, slot 0 leftmost.

#include <vector>

#include "sivsq/collective_spin.hpp"
#include "sivsq/integrator.hpp"
#include "sivsq/lindblad.hpp"

namespace sivsq {

inline constexpr int kMaxEnsembleSpins = 12;

struct EnsembleOps {
  int particles = 0;
  SparseCMatrix s_plus;
  SparseCMatrix s_minus;
  SparseCMatrix s_z;
  SparseCMatrix s_squared;
  std::vector<SparseCMatrix> sigma_z;  // one per spin, |2><2| - |1><1|

  int dim() const { return 1 << particles; }
  SparseCMatrix s_x() const;
  SparseCMatrix jump_operator(double theta) const;  // sin(theta) S_+ + cos(theta) S_-
  ObservableSet observables() const;
};

EnsembleOps build_ensemble_ops(int particles);

// H = 0, jumps (D_-, gamma) and (sigma_z^j, Gamma) for each j. Jumps with
// zero rate are omitted.
LindbladModel build_dephasing_model(const EnsembleOps& ops, double theta, double gamma,
                                    double Gamma);

double total_spin_expectation(const DensityMatrix& rho, const EnsembleOps& ops);

// |S = N/2 - pairs, m = -S>: singlets on spins (0,1), (2,3), ... and every
// remaining spin down. 2 * pairs <= N.
CVector lower_spin_state(int particles, int pairs);

// 2^N x (N+1) isometry onto the symmetric subspace; column i is the Dicke
// state with m = i - N/2 (same ordering as SpinBasis).
CMatrix symmetric_isometry(int particles);

}  // namespace sivsq
