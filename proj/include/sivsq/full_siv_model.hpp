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

// N four-level SiV centers (levels |1>..|4>, index 0..3) coupled to one
// damped phonon mode, in the interaction picture after the rotating-frame
// and Schrieffer-Wolff steps:
//
//   H(t) = sum_j g a^dag ( |1><3| e^{-i Delta t} + (O1/Delta) |4><3| e^{2i wB t}
//                         - (O2/Delta) |1><2| )
//        + sum_j g a^dag ( |2><4| e^{-i Delta t} + (O2/Delta) |3><4| e^{-2i wB t}
//                         - (O1/Delta) |2><1| ) + h.c.
//
// with phonon damping kappa D[a].

#include <array>
#include <map>
#include <string>
#include <vector>

#include "sivsq/boson.hpp"
#include "sivsq/integrator.hpp"

namespace sivsq {

struct SiVParams {
  double omega = 0.0;    // orbital splitting sqrt(lambda_SO^2 + 4 Upsilon^2)
  double omega_B = 0.0;  // spin Zeeman splitting gamma_S B
  double Omega1 = 0.0;   // drive |1> <-> |4>
  double Omega2 = 0.0;   // drive |2> <-> |3>
  double omega1 = 0.0;   // drive frequencies
  double omega2 = 0.0;
  double Delta = 0.0;    // omega + omega_B - omega1 = omega - omega_B - omega2
  double g = 1.0;        // single-SiV strain coupling

  double Omega() const { return std::hypot(Omega1, Omega2); }
  double theta() const { return std::atan2(Omega1, Omega2); }

  // Drive amplitudes from (Omega, theta); drive frequencies chosen so both
  // branches share the detuning Delta.
  static SiVParams from_effective(double g, double Omega, double theta, double Delta,
                                  double omega_B, double omega);

  // Hard failures (inconsistent detuning, non-positive Delta) throw;
  // violated hierarchy Delta, omega_B >> g, Omega returns warnings.
  std::vector<std::string> validate() const;
};

// Level projectors and transition operators of one SiV (4x4).
struct SingleSivOps {
  std::array<std::array<Eigen::Matrix4cd, 4>, 4> ket_bra;  // ket_bra[i][k] = |i+1><k+1|
  Eigen::Matrix4cd j_minus;      // |1><3| + |2><4|
  Eigen::Matrix4cd j_plus;
  Eigen::Matrix4cd sigma_minus;  // |1><2|
  Eigen::Matrix4cd sigma_plus;
  Eigen::Matrix4cd sigma_z;      // |2><2| - |1><1|

  // omega_B |2><2| + omega |3><3| + (omega + omega_B) |4><4|
  Eigen::Matrix4cd h_siv(const SiVParams& p) const;
};

SingleSivOps build_single_siv_ops();

enum class EnsembleRepresentation {
  kProduct,    // full 4^N tensor-product space; slot 0 leftmost
  kSymmetric,  // permutation-symmetric occupation basis (n1, n2, n3, n4)
};

// The SiV factor of the Hilbert space and its collective operators
// E_ik = sum_j |i><k|_j.
class SivEnsembleSpace {
 public:
  SivEnsembleSpace(int particles, EnsembleRepresentation representation);

  int particles() const { return particles_; }
  EnsembleRepresentation representation() const { return representation_; }
  int dim() const { return dim_; }
  SparseCMatrix collective(int i, int k) const;
  // Every SiV in level |1>.
  CVector ground_state() const;

 private:
  int particles_;
  EnsembleRepresentation representation_;
  int dim_;
  std::vector<std::array<int, 4>> occupations_;  // symmetric basis
  std::map<std::array<int, 4>, int> index_;
};

struct FullSivModel {
  LindbladModel model;
  SivEnsembleSpace space;
  FockBasis fock;
  ObservableSet observables;  // pseudo-spin {|1>,|2>} operators (x) 1
  SparseCMatrix upper_population;  // sum_j (|3><3| + |4><4|)_j (x) 1

  DensityMatrix initial_state() const;  // all SiVs in |1>, phonon vacuum
};

inline constexpr int kFullModelDimensionCap = 4096;

// Interaction-picture Hamiltonian as a harmonic sum with frequencies
// {0, -Delta, +2 omega_B, -2 omega_B}. No jumps.
LindbladModel build_interaction_hamiltonian(const SiVParams& params, const SivEnsembleSpace& space,
                                            const FockBasis& fock,
                                            int dimension_cap = kFullModelDimensionCap);

FullSivModel build_full_model(const SiVParams& params, int particles, double kappa, int n_max,
                              EnsembleRepresentation representation =
                                  EnsembleRepresentation::kSymmetric,
                              int dimension_cap = kFullModelDimensionCap);

struct EffectiveComparison {
  std::vector<double> times;
  std::vector<double> xi2_full;
  std::vector<double> xi2_effective;
  double max_relative_deviation;     // over samples where both are defined
  double steady_xi2_full;            // mean over the last 10% of samples
  double steady_xi2_effective;
  double steady_relative_deviation;
  double max_upper_population;       // levels |3>,|4> over the horizon
  double max_truncation_population;  // phonon level n_max, both models
};

EffectiveComparison validate_effective(const SiVParams& params, int particles, double kappa,
                                       int n_max, double horizon, int samples,
                                       const IntegratorOptions& options = {},
                                       EnsembleRepresentation representation =
                                           EnsembleRepresentation::kSymmetric);

}  // namespace sivsq
