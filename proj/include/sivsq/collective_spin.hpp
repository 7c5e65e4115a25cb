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

// Collective spin operators in a single total-spin sector |S, m>, with the
// basis ordered by m ascending from -S (index = m + S).

#include <variant>

#include "sivsq/types.hpp"

namespace sivsq {

class SpinBasis {
 public:
  // Maximal sector S = N/2.
  explicit SpinBasis(int particles);
  // Arbitrary sector; S must be a non-negative half-integer with S <= N/2
  // and N/2 - S integer.
  SpinBasis(int particles, double total_spin);

  int particles() const { return particles_; }
  double total_spin() const { return twice_spin_ / 2.0; }
  int twice_spin() const { return twice_spin_; }
  int dim() const { return twice_spin_ + 1; }
  double m_of(int index) const { return index - total_spin(); }

 private:
  int particles_;
  int twice_spin_;
};

struct SpinOperators {
  SpinBasis basis;
  SparseCMatrix s_plus;
  SparseCMatrix s_minus;
  SparseCMatrix s_z;

  SparseCMatrix s_x() const { return 0.5 * (s_plus + s_minus); }
};

SpinOperators build_spin_operators(const SpinBasis& basis);

// D_- = sin(theta) S_+ + cos(theta) S_-. D_+ is its adjoint.
SparseCMatrix build_jump_operator(const SpinOperators& ops, double theta);

CVector dicke_state(const SpinBasis& basis, double m);

struct SqueezingResult {
  double xi2;
  double mean_sz;
  double var_sx;  // <Sx^2>; the mean spin lies along z so this is the variance
};

struct SqueezingOptions {
  // |<Sz>| below epsilon_per_particle * N is treated as an undefined mean-spin
  // direction.
  double epsilon_per_particle = 1e-9;
};

// xi^2 = N <Sx^2> / <Sz>^2 for a state whose mean spin lies along z.
// Works in any representation: pass the Sz and Sx matrices that act on the
// state's space.
SqueezingResult squeezing_parameter(const CVector& psi, const SparseCMatrix& s_z,
                                    const SparseCMatrix& s_x, int particles,
                                    const SqueezingOptions& options = {});
SqueezingResult squeezing_parameter(const CMatrix& rho, const SparseCMatrix& s_z,
                                    const SparseCMatrix& s_x, int particles,
                                    const SqueezingOptions& options = {});

inline SqueezingResult squeezing_parameter(const CVector& psi, const SpinOperators& ops,
                                           const SqueezingOptions& options = {}) {
  return squeezing_parameter(psi, ops.s_z, ops.s_x(), ops.basis.particles(), options);
}
inline SqueezingResult squeezing_parameter(const CMatrix& rho, const SpinOperators& ops,
                                           const SqueezingOptions& options = {}) {
  return squeezing_parameter(rho, ops.s_z, ops.s_x(), ops.basis.particles(), options);
}

// tr(rho A) and <psi|A|psi> for sparse observables.
Complex expectation(const CMatrix& rho, const SparseCMatrix& op);
Complex expectation(const CVector& psi, const SparseCMatrix& op);

}  // namespace sivsq
