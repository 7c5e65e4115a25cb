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

#include "sivsq/full_siv_model.hpp"

#include <cmath>
#include <numeric>

#include "sivsq/models.hpp"

namespace sivsq {

SiVParams SiVParams::from_effective(double g, double Omega, double theta, double Delta,
                                    double omega_B, double omega) {
  SiVParams p;
  p.g = g;
  p.Omega1 = Omega * std::sin(theta);
  p.Omega2 = Omega * std::cos(theta);
  p.Delta = Delta;
  p.omega_B = omega_B;
  p.omega = omega;
  p.omega1 = omega + omega_B - Delta;
  p.omega2 = omega - omega_B - Delta;
  return p;
}

std::vector<std::string> SiVParams::validate() const {
  if (!(Delta > 0.0)) throw ValidationError("Delta must be positive");
  if (!(omega_B > 0.0)) throw ValidationError("omega_B must be positive");
  if (Omega1 < 0.0 || Omega2 < 0.0) throw ValidationError("drive amplitudes must be >= 0");
  const double d1 = omega + omega_B - omega1;
  const double d2 = omega - omega_B - omega2;
  const double scale = std::max({1.0, std::abs(omega), std::abs(Delta)});
  if (std::abs(d1 - Delta) > 1e-9 * scale || std::abs(d2 - Delta) > 1e-9 * scale) {
    throw ValidationError("drive frequencies inconsistent with the common detuning Delta");
  }
  std::vector<std::string> warnings;
  const double fast = std::min(Delta, omega_B);
  const double slow = std::max({std::abs(g), Omega1, Omega2});
  if (fast < 10.0 * slow) {
    warnings.push_back("hierarchy Delta, omega_B >> g, Omega is weak (min fast/slow ratio " +
                       std::to_string(fast / slow) + ")");
  }
  return warnings;
}

Eigen::Matrix4cd SingleSivOps::h_siv(const SiVParams& p) const {
  return p.omega_B * ket_bra[1][1] + p.omega * ket_bra[2][2] +
         (p.omega + p.omega_B) * ket_bra[3][3];
}

SingleSivOps build_single_siv_ops() {
  SingleSivOps ops;
  for (int i = 0; i < 4; ++i) {
    for (int k = 0; k < 4; ++k) {
      ops.ket_bra[i][k] = Eigen::Matrix4cd::Zero();
      ops.ket_bra[i][k](i, k) = 1.0;
    }
  }
  ops.j_minus = ops.ket_bra[0][2] + ops.ket_bra[1][3];
  ops.j_plus = ops.j_minus.adjoint();
  ops.sigma_minus = ops.ket_bra[0][1];
  ops.sigma_plus = ops.sigma_minus.adjoint();
  ops.sigma_z = ops.ket_bra[1][1] - ops.ket_bra[0][0];
  return ops;
}

SivEnsembleSpace::SivEnsembleSpace(int particles, EnsembleRepresentation representation)
    : particles_(particles), representation_(representation) {
  if (particles < 1) throw ValidationError("particle count must be positive");
  if (representation == EnsembleRepresentation::kProduct) {
    if (particles > 8) throw ValidationError("product representation limited to N <= 8");
    dim_ = 1 << (2 * particles);
    return;
  }
  for (int n1 = particles; n1 >= 0; --n1)
    for (int n2 = particles - n1; n2 >= 0; --n2)
      for (int n3 = particles - n1 - n2; n3 >= 0; --n3) {
        const std::array<int, 4> occ{n1, n2, n3, particles - n1 - n2 - n3};
        index_[occ] = static_cast<int>(occupations_.size());
        occupations_.push_back(occ);
      }
  dim_ = static_cast<int>(occupations_.size());
}

SparseCMatrix SivEnsembleSpace::collective(int i, int k) const {
  std::vector<Eigen::Triplet<Complex>> t;
  if (representation_ == EnsembleRepresentation::kProduct) {
    for (int s = 0; s < dim_; ++s) {
      for (int j = 0; j < particles_; ++j) {
        const int shift = 2 * (particles_ - 1 - j);
        const int digit = (s >> shift) & 3;
        if (digit != k) continue;
        const int target = s + ((i - k) << shift);
        t.emplace_back(target, s, 1.0);
      }
    }
  } else {
    for (int s = 0; s < dim_; ++s) {
      std::array<int, 4> occ = occupations_[s];
      if (occ[k] == 0) continue;
      if (i == k) {
        t.emplace_back(s, s, double(occ[k]));
        continue;
      }
      const double amp = std::sqrt(double(occ[k]) * (occ[i] + 1));
      occ[k] -= 1;
      occ[i] += 1;
      t.emplace_back(index_.at(occ), s, amp);
    }
  }
  SparseCMatrix m(dim_, dim_);
  m.setFromTriplets(t.begin(), t.end());
  return m;
}

CVector SivEnsembleSpace::ground_state() const {
  // product: all digits zero; symmetric: (N, 0, 0, 0) is enumerated first
  CVector v = CVector::Zero(dim_);
  v(0) = 1.0;
  return v;
}

LindbladModel build_interaction_hamiltonian(const SiVParams& p, const SivEnsembleSpace& space,
                                            const FockBasis& fock, int dimension_cap) {
  validate(fock);
  const long total = static_cast<long>(space.dim()) * fock.dim();
  if (total > dimension_cap) {
    throw ValidationError("full model dimension " + std::to_string(total) + " exceeds cap " +
                          std::to_string(dimension_cap));
  }
  const SparseCMatrix a_dag = adjoint(build_annihilation(fock));
  auto e = [&](int i, int k) { return space.collective(i - 1, k - 1); };
  const double r1 = p.Omega1 / p.Delta;
  const double r2 = p.Omega2 / p.Delta;

  const SparseCMatrix stat = tensor_product(SparseCMatrix(-p.g * (r2 * e(1, 2) + r1 * e(2, 1))),
                                            a_dag);
  LindbladModel model(SparseCMatrix(stat + adjoint(stat)));
  model.add_harmonic(tensor_product(SparseCMatrix(p.g * (e(1, 3) + e(2, 4))), a_dag), -p.Delta);
  model.add_harmonic(tensor_product(SparseCMatrix(p.g * r1 * e(4, 3)), a_dag), 2 * p.omega_B);
  model.add_harmonic(tensor_product(SparseCMatrix(p.g * r2 * e(3, 4)), a_dag), -2 * p.omega_B);
  return model;
}

FullSivModel build_full_model(const SiVParams& params, int particles, double kappa, int n_max,
                              EnsembleRepresentation representation, int dimension_cap) {
  params.validate();
  if (!(kappa > 0.0)) throw ValidationError("kappa must be positive");
  SivEnsembleSpace space(particles, representation);
  const FockBasis fock{n_max};
  LindbladModel model = build_interaction_hamiltonian(params, space, fock, dimension_cap);
  const SparseCMatrix id_f = identity(fock.dim());
  model.add_jump(tensor_product(identity(space.dim()), build_annihilation(fock)), kappa);

  ObservableSet obs;
  obs.particles = particles;
  obs.s_z = tensor_product(SparseCMatrix(0.5 * (space.collective(1, 1) - space.collective(0, 0))),
                           id_f);
  obs.s_x = tensor_product(SparseCMatrix(0.5 * (space.collective(0, 1) + space.collective(1, 0))),
                           id_f);
  obs.phonon_number = tensor_product(identity(space.dim()), build_number(fock));
  SparseCMatrix upper =
      tensor_product(SparseCMatrix(space.collective(2, 2) + space.collective(3, 3)), id_f);
  return {std::move(model), std::move(space), fock, std::move(obs), std::move(upper)};
}

DensityMatrix FullSivModel::initial_state() const {
  return pure_density(tensor_product(space.ground_state(), fock_state(fock, 0)));
}

namespace {

double steady_mean(const std::vector<double>& v) {
  const size_t n = v.size();
  const size_t start = n - std::max<size_t>(1, n / 10);
  double acc = 0.0;
  for (size_t i = start; i < n; ++i) acc += v[i];
  return acc / double(n - start);
}

}  // namespace

EffectiveComparison validate_effective(const SiVParams& params, int particles, double kappa,
                                       int n_max, double horizon, int samples,
                                       const IntegratorOptions& options,
                                       EnsembleRepresentation representation) {
  const FullSivModel full = build_full_model(params, particles, kappa, n_max, representation);
  const EffectiveModel eff = build_effective_model(particles, params.theta(), params.g,
                                                   params.Omega(), params.Delta, kappa, n_max);
  const std::vector<double> times = linear_grid(0.0, horizon, samples);

  EffectiveComparison cmp{};
  cmp.times = times;
  double max_upper = 0.0;
  double max_trunc = 0.0;
  CVector top = fock_state(full.fock, n_max);
  const SparseCMatrix top_full =
      tensor_product(identity(full.space.dim()), to_sparse(CMatrix(top * top.adjoint())));
  {
    const LiouvillianKernel kernel(full.model);
    DensityMatrix rho = full.initial_state();
    integrate(kernel, rho, 0.0, times, options, [&](double t, DensityMatrix& r) {
      cmp.xi2_full.push_back(measure(t, r, full.observables).xi2);
      max_upper = std::max(max_upper, expectation(r, full.upper_population).real());
      max_trunc = std::max(max_trunc, expectation(r, top_full).real());
    });
  }
  {
    const LiouvillianKernel kernel(eff.model);
    DensityMatrix rho = eff.product_state(dicke_state(eff.spin.basis, -particles / 2.0));
    integrate(kernel, rho, 0.0, times, options, [&](double t, DensityMatrix& r) {
      cmp.xi2_effective.push_back(measure(t, r, eff.observables).xi2);
      max_trunc = std::max(max_trunc, eff.truncation_population(r));
    });
  }
  double worst = 0.0;
  for (size_t i = 0; i < times.size(); ++i) {
    const double a = cmp.xi2_full[i], b = cmp.xi2_effective[i];
    if (std::isfinite(a) && std::isfinite(b) && b != 0.0) {
      worst = std::max(worst, std::abs(a - b) / std::abs(b));
    }
  }
  cmp.max_relative_deviation = worst;
  cmp.steady_xi2_full = steady_mean(cmp.xi2_full);
  cmp.steady_xi2_effective = steady_mean(cmp.xi2_effective);
  cmp.steady_relative_deviation =
      std::abs(cmp.steady_xi2_full - cmp.steady_xi2_effective) / cmp.steady_xi2_effective;
  cmp.max_upper_population = max_upper;
  cmp.max_truncation_population = max_trunc;
  return cmp;
}

}  // namespace sivsq
