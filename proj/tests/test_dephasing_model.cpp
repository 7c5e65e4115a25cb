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

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>

#include "sivsq/analytic_steady_state.hpp"
#include "sivsq/collective_spin.hpp"
#include "sivsq/dephasing_model.hpp"
#include "sivsq/models.hpp"
#include "sivsq/steady_state.hpp"
#include "test_util.hpp"

using namespace sivsq;
using sivsq::test::max_abs;

namespace {

std::vector<double> spectrum(const SparseCMatrix& m) {
  Eigen::SelfAdjointEigenSolver<CMatrix> es{CMatrix(m)};
  std::vector<double> v(es.eigenvalues().data(), es.eigenvalues().data() + m.rows());
  return v;
}

}  // namespace

TEST_CASE("ensemble operator guards and spectra") {
  CHECK_THROWS_AS(build_ensemble_ops(0), ValidationError);
  CHECK_THROWS_AS(build_ensemble_ops(kMaxEnsembleSpins + 1), ValidationError);

  const auto s2 = spectrum(build_ensemble_ops(2).s_squared);
  CHECK(std::abs(s2[0]) < 1e-13);
  for (int i = 1; i < 4; ++i) CHECK(std::abs(s2[i] - 2.0) < 1e-13);

  const auto sz = spectrum(build_ensemble_ops(3).s_z);
  const std::vector<double> expect{-1.5, -0.5, -0.5, -0.5, 0.5, 0.5, 0.5, 1.5};
  for (int i = 0; i < 8; ++i) CHECK(std::abs(sz[i] - expect[i]) < 1e-13);
}

TEST_CASE("collective operators are sums of local ones") {
  const EnsembleOps ops = build_ensemble_ops(4);
  SparseCMatrix sum(ops.dim(), ops.dim());
  for (const auto& z : ops.sigma_z) sum += z;
  CHECK(max_abs(CMatrix(0.5 * sum - ops.s_z)) < 1e-14);
  const CMatrix d = ops.jump_operator(0.3);
  const CMatrix s2 = ops.s_squared;
  CHECK(max_abs(CMatrix(s2 * d - d * s2)) < 1e-10);
  // S^2 = Sz^2 + (S+S- + S-S+)/2
  const CMatrix sp = ops.s_plus, sm = ops.s_minus, szm = ops.s_z;
  CHECK(max_abs(CMatrix(szm * szm + 0.5 * (sp * sm + sm * sp) - s2)) < 1e-12);
}

TEST_CASE("symmetric isometry maps the Dicke-sector jump") {
  const int N = 6;
  const double theta = std::atan(0.4);
  const EnsembleOps ops = build_ensemble_ops(N);
  const CMatrix v = symmetric_isometry(N);
  CHECK(max_abs(CMatrix(v.adjoint() * v - CMatrix::Identity(N + 1, N + 1))) < 1e-13);
  const SpinOperators sector = build_spin_operators(SpinBasis(N));
  const CMatrix restricted = v.adjoint() * CMatrix(ops.jump_operator(theta)) * v;
  CHECK(max_abs(CMatrix(restricted - CMatrix(build_jump_operator(sector, theta)))) < 1e-12);
}

TEST_CASE("total spin expectation") {
  const EnsembleOps ops = build_ensemble_ops(4);
  const CVector down = lower_spin_state(4, 0);
  CHECK(std::abs(total_spin_expectation(pure_density(down), ops) - 6.0) < 1e-13);
  const EnsembleOps two = build_ensemble_ops(2);
  const DensityMatrix mixed = CMatrix::Identity(4, 4) / 4.0;
  CHECK(std::abs(total_spin_expectation(mixed, two) - 1.5) < 1e-14);
}

TEST_CASE("lower spin states are Dicke states of the requested sector") {
  const int N = 6;
  const EnsembleOps ops = build_ensemble_ops(N);
  for (int pairs = 0; pairs <= 3; ++pairs) {
    const CVector psi = lower_spin_state(N, pairs);
    const double S = 0.5 * N - pairs;
    CHECK(std::abs(psi.norm() - 1.0) < 1e-14);
    CHECK(max_abs(CMatrix(ops.s_squared * psi - S * (S + 1) * psi)) < 1e-12);
    CHECK(max_abs(CMatrix(ops.s_z * psi + S * psi)) < 1e-12);
  }
  CHECK_THROWS_AS(lower_spin_state(N, 4), ValidationError);
}

TEST_CASE("zero-rate dephasing is omitted") {
  const EnsembleOps ops = build_ensemble_ops(3);
  CHECK(build_dephasing_model(ops, 0.2, 1.0, 0.0).jumps().size() == 1);
  CHECK(build_dephasing_model(ops, 0.2, 1.0, 0.1).jumps().size() == 4);
  CHECK_THROWS_AS(build_dephasing_model(ops, 0.2, 1.0, -0.1), ValidationError);
}

TEST_CASE("without dephasing the full space reproduces the Dicke sector") {
  for (int N : {2, 4, 6}) {
    const double theta = std::atan(0.3);
    const EnsembleOps ops = build_ensemble_ops(N);
    const LindbladModel big = build_dephasing_model(ops, theta, 1.0, 0.0);
    const CollectiveModel small = build_collective_model(N, theta, 1.0);
    ObservableSet obs = ops.observables();
    const auto times = linear_grid(0.0, 3.0, 7);
    const auto rb = evolve(big, pure_density(lower_spin_state(N, 0)), times, obs);
    const auto rs = evolve(small.model, pure_density(dicke_state(small.spin.basis, -0.5 * N)),
                           times, small.observables);
    const double s2 = 0.25 * N * (N + 2);
    for (size_t i = 0; i < times.size(); ++i) {
      CHECK(std::abs(rb.records[i].mean_sz - rs.records[i].mean_sz) < 1e-8);
      CHECK(std::abs(rb.records[i].var_sx - rs.records[i].var_sx) < 1e-8);
      CHECK(std::abs(rb.records[i].s_squared - s2) < 1e-8 * s2);
    }
  }
}

TEST_CASE("dephasing gives a unique steady state that squeezes less") {
  const int N = 4;
  const double theta = std::atan(0.2);
  const EnsembleOps ops = build_ensemble_ops(N);
  const LindbladModel m = build_dephasing_model(ops, theta, 1.0, 0.1);
  SteadyStateOptions so;
  so.strategy = SteadyStrategy::kNullSpace;
  so.dense_limit = 300;
  const SteadyStateResult ss = steady_state(m, so);
  CHECK(ss.null_dimension == 1);
  const double xi2 = measure(0.0, ss.rho, ops.observables()).xi2;
  CHECK(xi2 >= exact_squeezing(N, theta).xi2);
  CHECK(xi2 < 1.0);
  CHECK_THROWS_AS(steady_state(build_dephasing_model(ops, theta, 1.0, 0.0), so),
                  NonUniqueSteadyState);
}
