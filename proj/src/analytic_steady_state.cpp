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

#include "sivsq/analytic_steady_state.hpp"

#include <cmath>

namespace sivsq {

namespace {

double log_binomial(int n, int k) {
  return std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0);
}

void check_inputs(int particles, double theta) {
  if (particles < 2 || particles % 2 != 0) {
    throw ValidationError("analytic dark state requires an even particle count N >= 2");
  }
  if (!(theta >= 0.0) || !(theta < 0.25 * kPi) || !(std::tan(theta) < 1.0)) {
    throw ValidationError("tan(theta) must lie in [0, 1): non-normalizable regime");
  }
}

}  // namespace

SteadyCoefficients steady_coefficients(int particles, double theta) {
  check_inputs(particles, theta);
  const int half = particles / 2;
  RVector c = RVector::Zero(particles + 1);
  const double t = std::tan(theta);
  if (t == 0.0) {
    c(0) = 1.0;
    return {particles, theta, c};
  }
  const double log_t = std::log(t);
  RVector logs(half + 1);
  for (int n = 0; n <= half; ++n) {
    logs(n) = n * log_t + log_binomial(half, n) - 0.5 * log_binomial(particles, 2 * n);
  }
  const double peak = logs.maxCoeff();
  double norm2 = 0.0;
  for (int n = 0; n <= half; ++n) {
    const double mag = std::exp(logs(n) - peak);
    c(2 * n) = (n % 2 == 0) ? mag : -mag;
    norm2 += mag * mag;
  }
  c /= std::sqrt(norm2);
  return {particles, theta, c};
}

double verify_dark_state(const SteadyCoefficients& coeffs) {
  const SpinOperators ops = build_spin_operators(SpinBasis(coeffs.particles));
  const SparseCMatrix d = build_jump_operator(ops, coeffs.theta);
  return (d * coeffs.state()).norm();
}

SqueezingResult exact_squeezing(int particles, double theta) {
  const SteadyCoefficients coeffs = steady_coefficients(particles, theta);
  const SpinOperators ops = build_spin_operators(SpinBasis(particles));
  return squeezing_parameter(coeffs.state(), ops);
}

int dark_kernel_dimension(int particles, double theta, double threshold) {
  const SpinOperators ops = build_spin_operators(SpinBasis(particles));
  const CMatrix d = CMatrix(build_jump_operator(ops, theta));
  Eigen::BDCSVD<CMatrix> svd(d);
  const RVector& sv = svd.singularValues();
  int count = 0;
  for (Eigen::Index i = 0; i < sv.size(); ++i) count += sv(i) < threshold * sv(0) ? 1 : 0;
  return count;
}

}  // namespace sivsq
