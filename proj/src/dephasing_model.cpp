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

#include "sivsq/dephasing_model.hpp"

#include <bit>
#include <cmath>

namespace sivsq {

namespace {

void check_particles(int particles) {
  if (particles < 1 || particles > kMaxEnsembleSpins) {
    throw ValidationError("ensemble size must be in [1, " + std::to_string(kMaxEnsembleSpins) +
                          "]");
  }
}

int bit_of(int particles, int j) { return 1 << (particles - 1 - j); }

}  // namespace

EnsembleOps build_ensemble_ops(int particles) {
  check_particles(particles);
  EnsembleOps ops;
  ops.particles = particles;
  const int dim = 1 << particles;
  std::vector<Eigen::Triplet<Complex>> plus;
  std::vector<Eigen::Triplet<Complex>> z;
  for (int j = 0; j < particles; ++j) {
    const int b = bit_of(particles, j);
    std::vector<Eigen::Triplet<Complex>> local;
    local.reserve(dim);
    for (int s = 0; s < dim; ++s) {
      const double sign = (s & b) ? 1.0 : -1.0;
      local.emplace_back(s, s, sign);
      if (!(s & b)) plus.emplace_back(s | b, s, 1.0);
    }
    SparseCMatrix sz(dim, dim);
    sz.setFromTriplets(local.begin(), local.end());
    ops.sigma_z.push_back(std::move(sz));
  }
  for (int s = 0; s < dim; ++s) {
    z.emplace_back(s, s, 0.5 * (2 * std::popcount(unsigned(s)) - particles));
  }
  ops.s_plus.resize(dim, dim);
  ops.s_plus.setFromTriplets(plus.begin(), plus.end());
  ops.s_minus = adjoint(ops.s_plus);
  ops.s_z.resize(dim, dim);
  ops.s_z.setFromTriplets(z.begin(), z.end());
  ops.s_squared = SparseCMatrix(ops.s_minus * ops.s_plus);
  ops.s_squared += SparseCMatrix(ops.s_z * ops.s_z);
  ops.s_squared += ops.s_z;
  return ops;
}

SparseCMatrix EnsembleOps::s_x() const { return SparseCMatrix(0.5 * (s_plus + s_minus)); }

SparseCMatrix EnsembleOps::jump_operator(double theta) const {
  return SparseCMatrix(std::sin(theta) * s_plus + std::cos(theta) * s_minus);
}

ObservableSet EnsembleOps::observables() const {
  ObservableSet obs;
  obs.particles = particles;
  obs.s_z = s_z;
  obs.s_x = s_x();
  obs.s_squared = s_squared;
  return obs;
}

LindbladModel build_dephasing_model(const EnsembleOps& ops, double theta, double gamma,
                                    double Gamma) {
  if (gamma < 0.0 || Gamma < 0.0) throw ValidationError("rates must be non-negative");
  LindbladModel model(SparseCMatrix(ops.dim(), ops.dim()));
  if (gamma > 0.0) model.add_jump(ops.jump_operator(theta), gamma);
  if (Gamma > 0.0) {
    for (const auto& sz : ops.sigma_z) model.add_jump(sz, Gamma);
  }
  return model;
}

double total_spin_expectation(const DensityMatrix& rho, const EnsembleOps& ops) {
  if (rho.rows() != ops.dim() || rho.cols() != ops.dim()) {
    throw ValidationError("density matrix does not match ensemble dimension");
  }
  return expectation(rho, ops.s_squared).real();
}

CVector lower_spin_state(int particles, int pairs) {
  check_particles(particles);
  if (pairs < 0 || 2 * pairs > particles) throw ValidationError("too many singlet pairs");
  const int dim = 1 << particles;
  CVector psi = CVector::Zero(dim);
  // Expand the product of singlets (|du> - |ud>)/sqrt2 over pair choices.
  const double amp = std::pow(0.5, 0.5 * pairs);
  for (int mask = 0; mask < (1 << pairs); ++mask) {
    int s = 0;
    double sign = 1.0;
    for (int p = 0; p < pairs; ++p) {
      if (mask & (1 << p)) {
        s |= bit_of(particles, 2 * p);
        sign = -sign;
      } else {
        s |= bit_of(particles, 2 * p + 1);
      }
    }
    psi(s) = sign * amp;
  }
  return psi;
}

CMatrix symmetric_isometry(int particles) {
  check_particles(particles);
  const int dim = 1 << particles;
  CMatrix v = CMatrix::Zero(dim, particles + 1);
  for (int s = 0; s < dim; ++s) v(s, std::popcount(unsigned(s))) = 1.0;
  for (int i = 0; i <= particles; ++i) v.col(i) /= v.col(i).norm();
  return v;
}

}  // namespace sivsq
