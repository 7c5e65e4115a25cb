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

// Closed-form dark state of D_- = sin(theta) S_+ + cos(theta) S_- in the
// S = N/2 sector (N even):
//   c_{2n} = (-1)^n tan^n(theta) C(N/2, n) C(N, 2n)^{-1/2} c_0,  c_odd = 0,
// where c_k is the amplitude on |N/2, -N/2 + k>.

#include "sivsq/collective_spin.hpp"

namespace sivsq {

struct SteadyCoefficients {
  int particles;
  double theta;
  RVector c;  // indexed by excitation number k = m + N/2

  CVector state() const { return c.cast<Complex>(); }
};

// Requires N even, N >= 2, 0 <= tan(theta) < 1. Amplitudes are accumulated in
// log space so large N does not overflow.
SteadyCoefficients steady_coefficients(int particles, double theta);

// ||D_- psi||_2
double verify_dark_state(const SteadyCoefficients& coeffs);

SqueezingResult exact_squeezing(int particles, double theta);

// Dimension of ker(D_-) in the S = N/2 sector, from the singular values of
// the dense (N+1)x(N+1) matrix; relative threshold.
int dark_kernel_dimension(int particles, double theta, double threshold = 1e-10);

}  // namespace sivsq
