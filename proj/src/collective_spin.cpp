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

#include "sivsq/collective_spin.hpp"

#include <cmath>
#include <vector>

namespace sivsq {

namespace {

int checked_twice(double value, const char* what) {
  const double twice = 2.0 * value;
  const double rounded = std::round(twice);
  if (std::abs(twice - rounded) > 1e-9) {
    throw ValidationError(std::string(what) + " must be a half-integer");
  }
  return static_cast<int>(rounded);
}

}  // namespace

SpinBasis::SpinBasis(int particles) : SpinBasis(particles, particles / 2.0) {}

SpinBasis::SpinBasis(int particles, double total_spin) : particles_(particles) {
  if (particles < 1) throw ValidationError("particle count must be positive");
  twice_spin_ = checked_twice(total_spin, "total spin S");
  if (twice_spin_ < 0) throw ValidationError("total spin S must be non-negative");
  if (twice_spin_ > particles) throw ValidationError("total spin S exceeds N/2");
  if ((particles - twice_spin_) % 2 != 0) {
    throw ValidationError("N/2 - S must be an integer");
  }
}

SpinOperators build_spin_operators(const SpinBasis& basis) {
  const int dim = basis.dim();
  const double s = basis.total_spin();
  std::vector<Eigen::Triplet<Complex>> plus, diag;
  plus.reserve(dim);
  diag.reserve(dim);
  for (int i = 0; i < dim; ++i) {
    const double m = basis.m_of(i);
    diag.emplace_back(i, i, m);
    if (i + 1 < dim) plus.emplace_back(i + 1, i, std::sqrt(s * (s + 1) - m * (m + 1)));
  }
  SpinOperators ops{basis, SparseCMatrix(dim, dim), SparseCMatrix(dim, dim),
                    SparseCMatrix(dim, dim)};
  ops.s_plus.setFromTriplets(plus.begin(), plus.end());
  ops.s_z.setFromTriplets(diag.begin(), diag.end());
  ops.s_minus = adjoint(ops.s_plus);
  return ops;
}

SparseCMatrix build_jump_operator(const SpinOperators& ops, double theta) {
  SparseCMatrix d = std::sin(theta) * ops.s_plus + std::cos(theta) * ops.s_minus;
  d.prune(Complex(0.0));
  return d;
}

CVector dicke_state(const SpinBasis& basis, double m) {
  const double offset = m + basis.total_spin();
  const double rounded = std::round(offset);
  if (std::abs(offset - rounded) > 1e-9 || rounded < 0 || rounded >= basis.dim()) {
    throw ValidationError("magnetic quantum number m out of range for sector S = " +
                          std::to_string(basis.total_spin()));
  }
  CVector psi = CVector::Zero(basis.dim());
  psi(static_cast<int>(rounded)) = 1.0;
  return psi;
}

Complex expectation(const CMatrix& rho, const SparseCMatrix& op) {
  // tr(rho A) = sum_ij rho_ji A_ij
  Complex acc = 0.0;
  for (int i = 0; i < op.outerSize(); ++i) {
    for (SparseCMatrix::InnerIterator it(op, i); it; ++it) {
      acc += rho(it.col(), it.row()) * it.value();
    }
  }
  return acc;
}

Complex expectation(const CVector& psi, const SparseCMatrix& op) {
  return psi.dot(op * psi);
}

namespace {

SqueezingResult finish_squeezing(double mean_sz, double var_sx, int particles,
                                 const SqueezingOptions& options) {
  if (std::abs(mean_sz) < options.epsilon_per_particle * particles) {
    throw RuntimeFailure("undefined mean-spin direction: |<Sz>| is below threshold");
  }
  return {particles * var_sx / (mean_sz * mean_sz), mean_sz, var_sx};
}

}  // namespace

SqueezingResult squeezing_parameter(const CVector& psi, const SparseCMatrix& s_z,
                                    const SparseCMatrix& s_x, int particles,
                                    const SqueezingOptions& options) {
  const double norm2 = psi.squaredNorm();
  const CVector sx_psi = s_x * psi;
  const double mean_sz = expectation(psi, s_z).real() / norm2;
  const double var_sx = sx_psi.squaredNorm() / norm2;
  return finish_squeezing(mean_sz, var_sx, particles, options);
}

SqueezingResult squeezing_parameter(const CMatrix& rho, const SparseCMatrix& s_z,
                                    const SparseCMatrix& s_x, int particles,
                                    const SqueezingOptions& options) {
  const double tr = rho.trace().real();
  const double mean_sz = expectation(rho, s_z).real() / tr;
  // tr(rho Sx Sx) = tr(Sx rho Sx)
  const CMatrix sx_rho = s_x * rho;
  const double var_sx = expectation(sx_rho, s_x).real() / tr;
  return finish_squeezing(mean_sz, var_sx, particles, options);
}

}  // namespace sivsq
