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

#include <doctest.h>

#include <cmath>

#include "sivsq/analytic_steady_state.hpp"
#include "sivsq/models.hpp"
#include "sivsq/steady_state.hpp"

using namespace sivsq;

TEST_CASE("coefficients at tan(theta) = 0 give the coherent state") {
  const SteadyCoefficients c = steady_coefficients(6, 0.0);
  CHECK(c.c(0) == 1.0);
  for (int k = 1; k <= 6; ++k) CHECK(c.c(k) == 0.0);
}

TEST_CASE("N = 4 coefficient ratios") {
  const SteadyCoefficients c = steady_coefficients(4, std::atan(0.2));
  CHECK(std::abs(c.c(2) / c.c(0) + 0.2 * 2 / std::sqrt(6.0)) < 1e-14);
  CHECK(std::abs(c.c(4) / c.c(0) - 0.04) < 1e-14);
  CHECK(c.c(1) == 0.0);
  CHECK(c.c(3) == 0.0);
  CHECK(std::abs(c.c.norm() - 1.0) < 1e-12);
}

TEST_CASE("dark-state residual and normalization on a grid") {
  for (int n = 2; n <= 200; n += 2) {
    for (int k = 1; k <= 9; ++k) {
      const SteadyCoefficients c = steady_coefficients(n, std::atan(0.1 * k));
      CHECK(verify_dark_state(c) < 1e-10);
      CHECK(std::abs(c.c.squaredNorm() - 1.0) < 1e-12);
      for (int j = 1; j <= n; j += 2) CHECK(c.c(j) == 0.0);
      for (int j = 2; j <= n; j += 2) CHECK(c.c(j) * c.c(j - 2) <= 0.0);  // alternating signs
    }
  }
  CHECK(verify_dark_state(steady_coefficients(100, std::atan(0.9))) < 1e-10);
}

TEST_CASE("coherent state is not dark for theta > 0") {
  SteadyCoefficients c = steady_coefficients(8, std::atan(0.2));
  c.c.setZero();
  c.c(0) = 1.0;
  CHECK(verify_dark_state(c) > 0.1);
}

TEST_CASE("input validation") {
  CHECK_THROWS_AS(steady_coefficients(5, 0.1), ValidationError);
  CHECK_THROWS_AS(steady_coefficients(0, 0.1), ValidationError);
  CHECK_THROWS_AS(steady_coefficients(4, std::atan(1.0)), ValidationError);
  CHECK_THROWS_AS(steady_coefficients(4, -0.1), ValidationError);
}

TEST_CASE("exact squeezing values") {
  for (int n : {2, 8, 100, 1000}) CHECK(std::abs(exact_squeezing(n, 0.0).xi2 - 1.0) < 1e-12);
  CHECK(std::abs(exact_squeezing(8, std::atan(0.2)).xi2 - 0.67) < 0.01);
  double prev = 1.0 + 1e-12;
  for (int k = 1; k <= 19; ++k) {
    const double x = exact_squeezing(100, std::atan(0.05 * k)).xi2;
    CHECK(x < prev);
    prev = x;
  }
  CHECK(std::abs(exact_squeezing(100, 1e-6).xi2 - 1.0) < 1e-4);
}

TEST_CASE("dark state has vanishing transverse mean spin") {
  const double th = std::atan(0.6);
  const SpinOperators ops = build_spin_operators(SpinBasis(12));
  const CVector psi = steady_coefficients(12, th).state();
  CHECK(std::abs(expectation(psi, ops.s_x())) < 1e-14);
  const SparseCMatrix sy = SparseCMatrix(Complex(0, -0.5) * (ops.s_plus - ops.s_minus));
  CHECK(std::abs(expectation(psi, sy)) < 1e-14);
}

TEST_CASE("dark kernel is one-dimensional and matches the master-equation steady state") {
  for (int n : {2, 4, 8, 20}) {
    for (double t : {0.2, 0.5, 0.9}) {
      const double th = std::atan(t);
      CHECK(dark_kernel_dimension(n, th) == 1);
      const CollectiveModel m = build_collective_model(n, th, 1.0);
      const SteadyStateResult r = steady_state(m.model);
      CHECK(fidelity(steady_coefficients(n, th).state(), r.rho) > 1 - 1e-8);
    }
  }
}
