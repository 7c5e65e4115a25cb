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
#include "sivsq/collective_spin.hpp"
#include "test_util.hpp"

using namespace sivsq;
using sivsq::test::commutator;
using sivsq::test::max_abs;

TEST_CASE("spin basis dimensions and sectors") {
  CHECK(SpinBasis(4).dim() == 5);
  CHECK(SpinBasis(5).dim() == 6);
  CHECK(SpinBasis(6, 1.0).dim() == 3);
  CHECK(SpinBasis(5, 0.5).dim() == 2);
  CHECK_THROWS_AS(SpinBasis(4, 3.0), ValidationError);
  CHECK_THROWS_AS(SpinBasis(4, 0.5), ValidationError);
  CHECK_THROWS_AS(SpinBasis(0), ValidationError);
  CHECK(SpinBasis(4).m_of(0) == -2.0);
}

TEST_CASE("ladder matrix elements") {
  const SpinOperators half = build_spin_operators(SpinBasis(1));
  CMatrix expected(2, 2);
  expected << 0, 0, 1, 0;
  CHECK(max_abs(CMatrix(half.s_plus) - expected) == 0.0);

  const SpinOperators one = build_spin_operators(SpinBasis(2));
  const CMatrix sp = one.s_plus;
  CHECK(std::abs(sp(1, 0) - std::sqrt(2.0)) < 1e-15);
  CHECK(std::abs(sp(2, 1) - std::sqrt(2.0)) < 1e-15);
}

TEST_CASE("commutation relations up to S = 60") {
  for (int n : {1, 2, 3, 7, 20, 61, 120}) {
    const SpinOperators ops = build_spin_operators(SpinBasis(n));
    CHECK(max_abs(CMatrix(ops.s_minus) - CMatrix(ops.s_plus).adjoint()) == 0.0);
    CHECK(max_abs(commutator(ops.s_plus, ops.s_minus) - 2.0 * CMatrix(ops.s_z)) < 1e-10);
    CHECK(max_abs(commutator(ops.s_z, ops.s_plus) - CMatrix(ops.s_plus)) < 1e-10);
    CHECK(max_abs(commutator(ops.s_z, ops.s_minus) + CMatrix(ops.s_minus)) < 1e-10);
    const CMatrix sz = ops.s_z;
    for (int i = 0; i < ops.basis.dim(); ++i) CHECK(sz(i, i).real() == ops.basis.m_of(i));
  }
}

TEST_CASE("jump operator limits") {
  const SpinOperators ops = build_spin_operators(SpinBasis(6));
  CHECK(max_abs(CMatrix(build_jump_operator(ops, 0.0)) - CMatrix(ops.s_minus)) == 0.0);
  const CMatrix quarter = build_jump_operator(ops, kPi / 4);
  CHECK(max_abs(quarter - std::sqrt(2.0) * CMatrix(ops.s_x())) < 1e-14);
  for (double th : {0.0, 0.3, 0.7, 1.2}) {
    const CMatrix d = build_jump_operator(ops, th);
    const CMatrix dd = d.adjoint() * d;
    CHECK(max_abs(dd - dd.adjoint()) < 1e-14);
    Eigen::SelfAdjointEigenSolver<CMatrix> es(dd);
    CHECK(es.eigenvalues().minCoeff() > -1e-12);
  }
}

TEST_CASE("jump operator annihilates the dark state (S = 2)") {
  const SpinOperators ops = build_spin_operators(SpinBasis(4));
  const double th = std::atan(0.2);
  const CVector psi = steady_coefficients(4, th).state();
  CHECK((CMatrix(build_jump_operator(ops, th)) * psi).norm() < 1e-12);
}

TEST_CASE("dicke states") {
  const SpinBasis b(4);
  CVector low = CVector::Zero(5);
  low(0) = 1.0;
  CHECK((dicke_state(b, -2) - low).norm() == 0.0);
  CVector mid = CVector::Zero(5);
  mid(2) = 1.0;
  CHECK((dicke_state(b, 0) - mid).norm() == 0.0);
  CHECK_THROWS_AS(dicke_state(b, 3), ValidationError);
  CHECK_THROWS_AS(dicke_state(b, 0.5), ValidationError);
}

TEST_CASE("coherent states sit at the standard quantum limit") {
  for (int n : {1, 2, 8, 33, 100}) {
    const SpinOperators ops = build_spin_operators(SpinBasis(n));
    const SqueezingResult r = squeezing_parameter(dicke_state(ops.basis, -0.5 * n), ops);
    CHECK(std::abs(r.xi2 - 1.0) < 1e-12);
    CHECK(std::abs(r.mean_sz + 0.5 * n) < 1e-12);
    CHECK(std::abs(r.var_sx - 0.25 * n) < 1e-12);
  }
}

TEST_CASE("squeezing of the N = 4 dark state matches the null space of D_-") {
  const double th = std::atan(0.2);
  const SpinOperators ops = build_spin_operators(SpinBasis(4));
  const CMatrix d = build_jump_operator(ops, th);
  Eigen::JacobiSVD<CMatrix> svd(d, Eigen::ComputeFullV);
  const CVector null = svd.matrixV().col(4);
  const double brute = squeezing_parameter(null, ops).xi2;
  CHECK(std::abs(brute - exact_squeezing(4, th).xi2) < 1e-10);
  // density matrix and vector forms agree
  const CMatrix rho = null * null.adjoint();
  CHECK(std::abs(squeezing_parameter(rho, ops).xi2 - brute) < 1e-12);
}

TEST_CASE("squeezing with vanishing mean spin is undefined") {
  const SpinOperators ops = build_spin_operators(SpinBasis(4));
  CHECK_THROWS_AS(squeezing_parameter(dicke_state(ops.basis, 0), ops), RuntimeFailure);
}
