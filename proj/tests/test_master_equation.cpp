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
#include "sivsq/dephasing_model.hpp"
#include "sivsq/full_siv_model.hpp"
#include "sivsq/kernels.hpp"
#include "sivsq/models.hpp"
#include "sivsq/steady_state.hpp"
#include "test_util.hpp"

using namespace sivsq;
using sivsq::test::max_abs;
using sivsq::test::random_density;

namespace {

LindbladModel damped_mode(int n_max, double kappa) {
  const FockBasis f{n_max};
  LindbladModel m(SparseCMatrix(f.dim(), f.dim()));
  m.add_jump(build_annihilation(f), kappa);
  return m;
}

CMatrix vec_apply(const CMatrix& super, const CMatrix& rho) {
  const Eigen::Index n = rho.rows();
  const CVector v = super * Eigen::Map<const CVector>(rho.data(), n * n);
  return Eigen::Map<const CMatrix>(v.data(), n, n);
}

}  // namespace

TEST_CASE("single phonon decay") {
  const LindbladModel m = damped_mode(2, 0.7);
  const CVector one = fock_state({2}, 1);
  const CMatrix d = liouvillian_rhs(m, pure_density(one), 0.0);
  CMatrix expected = CMatrix::Zero(3, 3);
  expected(0, 0) = 2 * 0.7;
  expected(1, 1) = -2 * 0.7;
  CHECK(max_abs(d - expected) < 1e-15);
}

TEST_CASE("model validation") {
  SparseCMatrix h(2, 2);
  h.insert(0, 1) = 1.0;
  CHECK_THROWS_AS(LindbladModel(h).validate(), ValidationError);
  LindbladModel ok(identity(2));
  CHECK_THROWS_AS(ok.add_jump(identity(3), 1.0), ValidationError);
  CHECK_THROWS_AS(ok.add_jump(identity(2), -1.0), ValidationError);
}

TEST_CASE("kernel matches the serial reference and the superoperator") {
  const EffectiveModel eff = build_effective_model(4, 0.3, 1.0, 1.0, 20.0, 0.5, 3);
  const FullSivModel full =
      build_full_model(SiVParams::from_effective(1.0, 1.0, 0.3, 20.0, 50.0, 0.0), 2, 0.5, 2);
  const LindbladModel deph = build_dephasing_model(build_ensemble_ops(4), 0.3, 1.0, 0.2);
  CollectiveModel coll = build_collective_model(SpinBasis(6, 2.0), 0.4, 1.3);
  coll.model.add_jump(coll.spin.s_z, 0.3);  // a diagonal jump in a collective sector
  const LindbladModel* models[] = {&eff.model, &full.model, &deph, &coll.model};
  unsigned seed = 1;
  for (const LindbladModel* m : models) {
    const LiouvillianKernel kernel(*m);
    const CMatrix rho = random_density(m->dim(), seed++);
    for (double t : {0.0, 0.37, 2.9}) {
      CMatrix fast(m->dim(), m->dim());
      kernel.apply(t, rho, fast);
      const CMatrix ref = lindblad_rhs_reference(*m, rho, t);
      const double scale = std::max(1.0, max_abs(ref));
      CHECK(max_abs(fast - ref) < 1e-12 * scale);
      CHECK(std::abs(fast.trace()) < 1e-12 * scale);
      CHECK(max_abs(fast - fast.adjoint()) == 0.0);
      if (m->dim() <= 40) {
        CHECK(max_abs(vec_apply(build_superoperator(*m, t), rho) - ref) < 1e-12 * scale);
      }
      const CMatrix sparse = CMatrix(build_sparse_superoperator(*m, t));
      CHECK(max_abs(vec_apply(sparse, rho) - ref) < 1e-12 * scale);
    }
  }
}

TEST_CASE("kernel column blocking at odd sizes") {
  for (int n : {1, 31, 32, 33, 97}) {
    CHECK(kernel_column_block(n) >= 1);
    CHECK(kernel_column_block(n) <= n);
    const CollectiveModel m = build_collective_model(n - 1 == 0 ? 1 : n - 1, 0.2, 1.0);
    const CMatrix rho = random_density(m.model.dim(), 7);
    CMatrix out(rho.rows(), rho.cols());
    LiouvillianKernel(m.model).apply(0.0, rho, out);
    CHECK(max_abs(out - lindblad_rhs_reference(m.model, rho, 0.0)) < 1e-11);
  }
}

TEST_CASE("dark state times vacuum is stationary under the effective model") {
  const double th = std::atan(0.2);
  const EffectiveModel eff = build_effective_model(8, th, 1.0, 1.0, 20.0, 0.5, 3);
  const DensityMatrix rho = eff.product_state(steady_coefficients(8, th).state());
  CHECK(max_abs(liouvillian_rhs(eff.model, rho, 0.0)) < 1e-10);
  CHECK(std::abs(eff.coupling - 0.05) < 1e-15);
}

TEST_CASE("effective Hamiltonian is Hermitian and reduces to exchange at theta = 0") {
  const EffectiveModel eff = build_effective_model(4, 0.0, 1.0, 1.0, 20.0, 0.5, 2);
  const CMatrix h = eff.model.h_static();
  CHECK(max_abs(h - h.adjoint()) == 0.0);
  const SpinOperators s = build_spin_operators(SpinBasis(4));
  const SparseCMatrix a = build_annihilation({2});
  const CMatrix expect = 0.05 * (CMatrix(tensor_product(s.s_minus, adjoint(a))) +
                                 CMatrix(tensor_product(s.s_plus, a)));
  CHECK(max_abs(h - expect) < 1e-15);
}

TEST_CASE("collective rate arithmetic") {
  CHECK(std::abs(collective_rate(1.0, 1.0, 20.0, 0.5) - 0.005) < 1e-15);
  const double mhz = 2 * kPi * 1e6;
  CHECK(std::abs(collective_rate(10 * mhz, 10 * mhz, 200 * mhz, 10 * mhz) / (2 * kPi) - 25e3) <
        1e-6);
  CHECK(std::abs(std::tan(mixing_angle(0.2, 1.0)) - 0.2) < 1e-15);
}

TEST_CASE("empty model leaves the state unchanged") {
  const LindbladModel m(SparseCMatrix(3, 3));
  const CMatrix rho0 = random_density(3, 3);
  ObservableSet obs;
  obs.particles = 2;
  obs.s_z = to_sparse(CMatrix(CVector::LinSpaced(3, -1, 1).asDiagonal()));
  obs.s_x = SparseCMatrix(3, 3);
  const TrajectoryResult r = evolve(m, rho0, {0.0, 1.0, 5.0}, obs);
  CHECK(max_abs(r.final_state - rho0) == 0.0);
}

TEST_CASE("integrator rejects bad grids") {
  const LindbladModel m = damped_mode(2, 1.0);
  const LiouvillianKernel k(m);
  DensityMatrix rho = pure_density(fock_state({2}, 1));
  CHECK_THROWS_AS(integrate(k, rho, 0.0, {1.0, 0.5}, {}, [](double, DensityMatrix&) {}),
                  ValidationError);
}

TEST_CASE("collective evolution relaxes to the dark state (N = 4)") {
  const double th = std::atan(0.2);
  const CollectiveModel m = build_collective_model(4, th, 1.0);
  ObservableSet obs = m.observables;
  obs.track_spectrum = true;
  const TrajectoryResult r = evolve(m.model, pure_density(dicke_state(m.spin.basis, -2)),
                                    linear_grid(0.0, 20.0, 41), obs);
  CHECK(std::abs(r.records.back().xi2 - exact_squeezing(4, th).xi2) < 1e-6);
  for (const auto& rec : r.records) {
    CHECK(rec.trace_error < 1e-8);
    CHECK(rec.hermiticity_error < 1e-9);
    CHECK(rec.min_eigenvalue > -1e-7);
    CHECK(std::abs(rec.s_squared - 6.0) < 6e-8);
  }
  CHECK(r.stats.accepted > 0);
}

TEST_CASE("steady states: damped mode, strategies, uniqueness") {
  const SteadyStateResult vac = steady_state(damped_mode(4, 1.0));
  CHECK(std::abs(vac.rho(0, 0) - 1.0) < 1e-10);
  CHECK(vac.null_dimension == 1);

  const double th = std::atan(0.2);
  const CollectiveModel m = build_collective_model(8, th, 1.0);
  const CVector dark = steady_coefficients(8, th).state();
  for (SteadyStrategy s : {SteadyStrategy::kNullSpace, SteadyStrategy::kLongHorizon,
                           SteadyStrategy::kKrylov, SteadyStrategy::kSparseDirect}) {
    SteadyStateOptions o;
    o.strategy = s;
    const SteadyStateResult r = steady_state(m.model, o);
    CHECK(r.strategy == s);
    CHECK(fidelity(dark, r.rho) > 1 - 1e-8);
    CHECK(r.residual < 1e-9);
  }
  CHECK(null_space_dimension(m.model) == 1);

  // collective decay on the 2^2 space: the singlet and all-down states are both dark
  const EnsembleOps ops = build_ensemble_ops(2);
  const LindbladModel two = build_dephasing_model(ops, 0.0, 1.0, 0.0);
  CHECK(null_space_dimension(two) == 4);  // populations and coherences of two dark states
  SteadyStateOptions dense;
  dense.strategy = SteadyStrategy::kNullSpace;
  CHECK_THROWS_AS(steady_state(two, dense), NonUniqueSteadyState);

  const FullSivModel full =
      build_full_model(SiVParams::from_effective(1.0, 1.0, 0.3, 20.0, 50.0, 0.0), 1, 0.5, 1);
  CHECK_THROWS_AS(steady_state(full.model), ValidationError);
}

TEST_CASE("effective and collective steady squeezing agree for kappa >= g") {
  const double th = std::atan(0.2);
  const EffectiveModel eff = build_effective_model(4, th, 1.0, 1.0, 20.0, 1.0, 4);
  const SteadyStateResult r = steady_state(eff.model);
  const double xe = measure(0.0, r.rho, eff.observables).xi2;
  const double xc = exact_squeezing(4, th).xi2;
  CHECK(std::abs(xe - xc) / xc < 1e-3);
  CHECK(expectation(r.rho, *eff.observables.phonon_number).real() < 1e-6);
}

TEST_CASE("density diagnostics and fidelities") {
  const CMatrix rho = random_density(5, 11);
  const DensityDiagnostics d = check_density_matrix(rho);
  CHECK(d.trace_error < 1e-14);
  CHECK(d.hermiticity_error < 1e-14);
  CHECK(d.min_eigenvalue > 0.0);
  CHECK(std::abs(fidelity(rho, rho) - 1.0) < 1e-8);
  const CVector e0 = CVector::Unit(5, 0);
  CHECK(std::abs(fidelity(e0, pure_density(e0)) - 1.0) < 1e-15);
}
