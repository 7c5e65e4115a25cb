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

// Ground-state SiV level structure in a static magnetic field (orbital
// Zeeman term neglected). Basis |ex,dn>, |ex,up>, |ey,dn>, |ey,up>.
// Energies are angular frequencies.

#include <array>

#include "sivsq/nanobeam.hpp"

namespace sivsq {

struct ZeemanParams {
  double lambda_so = 2.0 * kPi * 45e9;
  double upsilon_x = 0.0;
  double upsilon_y = 0.0;
  double gamma_s = 1.0;  // gamma_s * |B| is an angular frequency

  // Upsilon_x from the orbital splitting omega = sqrt(lambda^2 + 4 Upsilon^2).
  static ZeemanParams from_orbital_splitting(double omega = 2.0 * kPi * 46e9,
                                             double lambda_so = 2.0 * kPi * 45e9);
  double upsilon() const { return std::hypot(upsilon_x, upsilon_y); }
  double omega() const;
  void validate() const;
};

Eigen::Vector3d crystal_to_internal(const Eigen::Vector3d& b_crystal, Orientation o);

Eigen::Matrix4cd siv_hamiltonian(const ZeemanParams& p, const Eigen::Vector3d& b_internal);

// Ascending numerical eigenvalues of siv_hamiltonian.
std::array<double, 4> eigenvalues_numeric(const ZeemanParams& p, const Eigen::Vector3d& b_internal);

// Exact closed form, with b = gamma_s |B| and b_z = gamma_s B_z:
//   E = +-sqrt(U^2 + l^2/4 + b^2/4 +- sqrt(U^2 b^2 + l^2 b_z^2 / 4)).
// Ascending.
std::array<double, 4> eigenvalues_closed_form(const ZeemanParams& p,
                                              const Eigen::Vector3d& b_internal);

// The literature expression
//   E = +-sqrt(U^2 + l^2/4 + b_z^2/4 +- sqrt(b_z^2 (U^2 + l^2/4) + (b_x^2 + b_y^2)^2 / 4)),
// which agrees with the exact spectrum only for b_x = b_y = 0. Ascending.
std::array<double, 4> eigenvalues_literature_form(const ZeemanParams& p,
                                                 const Eigen::Vector3d& b_internal);

struct Splittings {
  double delta_41;
  double delta_32;
};

Splittings splittings_from(const std::array<double, 4>& ascending);

// Levels 1..4 by ascending energy of the diagonalized Hamiltonian.
Splittings splittings(const ZeemanParams& p, const Eigen::Vector3d& b_crystal, Orientation o);

}  // namespace sivsq
