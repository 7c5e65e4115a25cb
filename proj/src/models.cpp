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

#include "sivsq/models.hpp"

#include <cmath>

namespace sivsq {

namespace {

SparseCMatrix spin_squared(const SpinOperators& ops) {
  // S^2 = S_- S_+ + S_z^2 + S_z
  SparseCMatrix s2 = SparseCMatrix(ops.s_minus * ops.s_plus);
  s2 += SparseCMatrix(ops.s_z * ops.s_z);
  s2 += ops.s_z;
  return s2;
}

}  // namespace

double collective_rate(double g, double omega, double delta, double kappa) {
  if (!(kappa > 0.0)) throw ValidationError("kappa must be positive");
  if (!(delta > 0.0)) throw ValidationError("Delta must be positive");
  return g * g * omega * omega / (delta * delta * kappa);
}

double mixing_angle(double omega1, double omega2) {
  if (omega1 < 0.0 || omega2 < 0.0 || omega1 + omega2 <= 0.0) {
    throw ValidationError("drive amplitudes must be non-negative and not both zero");
  }
  return std::atan2(omega1, omega2);
}

EffectiveModel build_effective_model(int particles, double theta, double g, double omega,
                                     double delta, double kappa, int n_max) {
  return build_effective_model(SpinBasis(particles), theta, g, omega, delta, kappa, n_max);
}

EffectiveModel build_effective_model(const SpinBasis& spin_basis, double theta, double g,
                                     double omega, double delta, double kappa, int n_max) {
  if (!(delta > 0.0)) throw ValidationError("Delta must be positive");
  if (!(kappa > 0.0)) throw ValidationError("kappa must be positive");
  const FockBasis fock{n_max};
  validate(fock);
  SpinOperators spin = build_spin_operators(spin_basis);
  const double coupling = g * omega / delta;
  const SparseCMatrix d_minus = build_jump_operator(spin, theta);
  const SparseCMatrix a = build_annihilation(fock);
  const SparseCMatrix coupling_term = coupling * tensor_product(d_minus, adjoint(a));
  SparseCMatrix h = coupling_term + adjoint(coupling_term);

  const SparseCMatrix id_spin = identity(spin_basis.dim());
  const SparseCMatrix id_fock = identity(fock.dim());
  LindbladModel model(h);
  model.add_jump(tensor_product(id_spin, a), kappa);

  ObservableSet obs;
  obs.particles = spin_basis.particles();
  obs.s_z = tensor_product(spin.s_z, id_fock);
  obs.s_x = tensor_product(spin.s_x(), id_fock);
  obs.phonon_number = tensor_product(id_spin, build_number(fock));
  obs.s_squared = tensor_product(spin_squared(spin), id_fock);
  return {std::move(model), std::move(spin), fock, coupling, std::move(obs)};
}

DensityMatrix EffectiveModel::product_state(const CVector& spin_state, int phonons) const {
  return pure_density(tensor_product(spin_state, fock_state(fock, phonons)));
}

DensityMatrix EffectiveModel::spin_part(const DensityMatrix& rho) const {
  const int ds = spin.basis.dim();
  const int df = fock.dim();
  DensityMatrix out = DensityMatrix::Zero(ds, ds);
  for (int i = 0; i < ds; ++i)
    for (int j = 0; j < ds; ++j)
      for (int n = 0; n < df; ++n) out(i, j) += rho(i * df + n, j * df + n);
  return out;
}

double EffectiveModel::truncation_population(const DensityMatrix& rho) const {
  const int ds = spin.basis.dim();
  const int df = fock.dim();
  double p = 0.0;
  for (int i = 0; i < ds; ++i) p += rho(i * df + fock.n_max, i * df + fock.n_max).real();
  return p;
}

CollectiveModel build_collective_model(int particles, double theta, double gamma) {
  return build_collective_model(SpinBasis(particles), theta, gamma);
}

CollectiveModel build_collective_model(const SpinBasis& spin_basis, double theta, double gamma) {
  if (!(gamma > 0.0)) throw ValidationError("gamma must be positive");
  SpinOperators spin = build_spin_operators(spin_basis);
  LindbladModel model(SparseCMatrix(spin_basis.dim(), spin_basis.dim()));
  model.add_jump(build_jump_operator(spin, theta), gamma);
  ObservableSet obs;
  obs.particles = spin_basis.particles();
  obs.s_z = spin.s_z;
  obs.s_x = spin.s_x();
  obs.s_squared = spin_squared(spin);
  return {std::move(model), std::move(spin), gamma, std::move(obs)};
}

}  // namespace sivsq
