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

#include "sivsq/zeeman.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Eigenvalues>

namespace sivsq {

ZeemanParams ZeemanParams::from_orbital_splitting(double omega, double lambda_so) {
  if (!(omega >= lambda_so && lambda_so >= 0.0)) {
    throw ValidationError("orbital splitting must be at least the spin-orbit strength");
  }
  ZeemanParams p;
  p.lambda_so = lambda_so;
  p.upsilon_x = 0.5 * std::sqrt(omega * omega - lambda_so * lambda_so);
  return p;
}

double ZeemanParams::omega() const {
  const double u = upsilon();
  return std::sqrt(lambda_so * lambda_so + 4.0 * u * u);
}

void ZeemanParams::validate() const {
  if (!(lambda_so >= 0.0)) throw ValidationError("lambda_so must be non-negative");
  if (!std::isfinite(upsilon_x) || !std::isfinite(upsilon_y) || !std::isfinite(gamma_s)) {
    throw ValidationError("Zeeman parameters must be finite");
  }
}

Eigen::Vector3d crystal_to_internal(const Eigen::Vector3d& b_crystal, Orientation o) {
  return internal_frame(o) * b_crystal;
}

Eigen::Matrix4cd siv_hamiltonian(const ZeemanParams& p, const Eigen::Vector3d& b) {
  p.validate();
  const Complex i = kI;
  const double bx = 0.5 * p.gamma_s * b.x();
  const double by = 0.5 * p.gamma_s * b.y();
  const double bz = 0.5 * p.gamma_s * b.z();
  const double ux = p.upsilon_x;
  const double uy = p.upsilon_y;
  const double l = 0.5 * p.lambda_so;
  Eigen::Matrix4cd h;
  h << ux + bz, bx - i * by, uy - i * l, 0.0,
       bx + i * by, ux - bz, 0.0, uy + i * l,
       uy + i * l, 0.0, -ux + bz, bx - i * by,
       0.0, uy - i * l, bx + i * by, -ux - bz;
  return h;
}

std::array<double, 4> eigenvalues_numeric(const ZeemanParams& p, const Eigen::Vector3d& b) {
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix4cd> es(siv_hamiltonian(p, b),
                                                     Eigen::EigenvaluesOnly);
  const Eigen::Vector4d v = es.eigenvalues();
  return {v(0), v(1), v(2), v(3)};
}

namespace {

std::array<double, 4> signed_roots(double outer, double inner) {
  const double lo = std::sqrt(std::max(0.0, outer - inner));
  const double hi = std::sqrt(outer + inner);
  std::array<double, 4> e{-hi, -lo, lo, hi};
  std::sort(e.begin(), e.end());
  return e;
}

}  // namespace

std::array<double, 4> eigenvalues_closed_form(const ZeemanParams& p, const Eigen::Vector3d& b) {
  const double u2 = p.upsilon() * p.upsilon();
  const double l2 = p.lambda_so * p.lambda_so;
  const double bb = p.gamma_s * p.gamma_s * b.squaredNorm();
  const double bz2 = p.gamma_s * p.gamma_s * b.z() * b.z();
  return signed_roots(u2 + 0.25 * l2 + 0.25 * bb, std::sqrt(u2 * bb + 0.25 * l2 * bz2));
}

std::array<double, 4> eigenvalues_literature_form(const ZeemanParams& p,
                                                 const Eigen::Vector3d& b) {
  const double u2 = p.upsilon() * p.upsilon();
  const double l2 = p.lambda_so * p.lambda_so;
  const double g2 = p.gamma_s * p.gamma_s;
  const double bz2 = g2 * b.z() * b.z();
  const double bp2 = g2 * (b.x() * b.x() + b.y() * b.y());
  return signed_roots(u2 + 0.25 * l2 + 0.25 * bz2,
                      std::sqrt(bz2 * (u2 + 0.25 * l2) + 0.25 * bp2 * bp2));
}

Splittings splittings_from(const std::array<double, 4>& e) {
  return {e[3] - e[0], e[2] - e[1]};
}

Splittings splittings(const ZeemanParams& p, const Eigen::Vector3d& b_crystal, Orientation o) {
  return splittings_from(eigenvalues_numeric(p, crystal_to_internal(b_crystal, o)));
}

}  // namespace sivsq
