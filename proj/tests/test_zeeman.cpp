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
#include <random>

#include "sivsq/zeeman.hpp"

using namespace sivsq;

namespace {

constexpr double kGHz = 2.0 * kPi * 1e9;

Eigen::Vector3d field_along(Eigen::Vector3d dir, double magnitude) {
  return magnitude * dir.normalized();
}

double max_rel(const std::array<double, 4>& a, const std::array<double, 4>& b, double scale) {
  double m = 0.0;
  for (int i = 0; i < 4; ++i) m = std::max(m, std::abs(a[i] - b[i]) / scale);
  return m;
}

}  // namespace

TEST_CASE("parameters") {
  const ZeemanParams p = ZeemanParams::from_orbital_splitting();
  CHECK(std::abs(p.omega() / kGHz - 46.0) < 1e-12);
  CHECK(std::abs(p.upsilon() / kGHz - std::sqrt(46.0 * 46.0 - 45.0 * 45.0) / 2) < 1e-12);
  CHECK_THROWS_AS(ZeemanParams::from_orbital_splitting(kGHz * 40, kGHz * 45), ValidationError);
}

TEST_CASE("crystal to internal frame") {
  const Eigen::Vector3d b = field_along({1, -1, 1}, 3.0);
  const Eigen::Vector3d aligned = crystal_to_internal(b, Orientation::k1Bar1);
  CHECK(std::abs(aligned.z() - 3.0) < 1e-15);
  CHECK(std::hypot(aligned.x(), aligned.y()) < 1e-15);
  const Eigen::Vector3d other = crystal_to_internal(b, Orientation::k111);
  CHECK(std::abs(other.z() - 1.0) < 1e-15);
  for (Orientation o : all_orientations()) {
    CHECK(std::abs(crystal_to_internal(b, o).norm() - 3.0) < 1e-15);
  }
}

TEST_CASE("Hamiltonian structure") {
  const ZeemanParams p = ZeemanParams::from_orbital_splitting();
  const Eigen::Matrix4cd h = siv_hamiltonian(p, Eigen::Vector3d(0.3, -0.8, 0.5) * kGHz * 20);
  CHECK((h - h.adjoint()).cwiseAbs().maxCoeff() == 0.0);
  CHECK(std::abs(h.trace()) < 1e-3);
  const auto e0 = eigenvalues_numeric(p, Eigen::Vector3d::Zero());
  const double half = p.omega() / 2;
  CHECK(std::abs(e0[0] + half) < 1e-6 * half);
  CHECK(std::abs(e0[1] + half) < 1e-6 * half);
  CHECK(std::abs(e0[2] - half) < 1e-6 * half);
  CHECK(std::abs(e0[3] - half) < 1e-6 * half);
}

TEST_CASE("closed form matches diagonalization on a random grid") {
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int i = 0; i < 200; ++i) {
    ZeemanParams p;
    p.lambda_so = kGHz * (10 + 60 * std::abs(u(rng)));
    p.upsilon_x = kGHz * 10 * u(rng);
    p.upsilon_y = kGHz * 10 * u(rng);
    const Eigen::Vector3d b(u(rng), u(rng), u(rng));
    const Eigen::Vector3d field = b * kGHz * 40;
    const auto num = eigenvalues_numeric(p, field);
    const double scale = std::max(std::abs(num[0]), std::abs(num[3]));
    CHECK(max_rel(num, eigenvalues_closed_form(p, field), scale) < 1e-9);
  }
}

TEST_CASE("literature form is exact only for an axial field") {
  const ZeemanParams p = ZeemanParams::from_orbital_splitting();
  const Eigen::Vector3d axial(0, 0, kGHz * 20);
  const double scale = kGHz * 33;
  CHECK(max_rel(eigenvalues_numeric(p, axial), eigenvalues_literature_form(p, axial), scale) <
        1e-12);
  const Eigen::Vector3d tilted = crystal_to_internal(field_along({1, -1, 1}, kGHz * 20),
                                                     Orientation::k111);
  CHECK(max_rel(eigenvalues_numeric(p, tilted), eigenvalues_literature_form(p, tilted), scale) >
        1e-3);
}

TEST_CASE("spectrum invariances") {
  const ZeemanParams p = ZeemanParams::from_orbital_splitting();
  const Eigen::Vector3d b(0.6, 0.2, 0.4);
  const Eigen::Vector3d field = b * kGHz * 30;
  const auto ref = eigenvalues_numeric(p, field);
  const double scale = std::abs(ref[3]);
  for (double phi : {0.4, 1.3, 2.9}) {
    const Eigen::Vector3d rotated(std::cos(phi) * field.x() - std::sin(phi) * field.y(),
                                  std::sin(phi) * field.x() + std::cos(phi) * field.y(), field.z());
    CHECK(max_rel(ref, eigenvalues_numeric(p, rotated), scale) < 1e-12);
  }
  CHECK(max_rel(ref, eigenvalues_numeric(p, -field), scale) < 1e-12);
  ZeemanParams q = p;
  q.upsilon_y = q.upsilon_x * 0.6;
  q.upsilon_x = q.upsilon_x * 0.8;
  CHECK(max_rel(ref, eigenvalues_numeric(q, field), scale) < 1e-12);
}

TEST_CASE("splittings at the default field") {
  const ZeemanParams p = ZeemanParams::from_orbital_splitting();
  const Eigen::Vector3d b = field_along({1, -1, 1}, kGHz * 20);
  const Splittings aligned = splittings(p, b, Orientation::k1Bar1);
  CHECK(std::abs(aligned.delta_41 / kGHz - 66.0) < 1e-9);
  CHECK(std::abs(aligned.delta_32 / kGHz - 26.0) < 1e-9);
  for (Orientation o : {Orientation::k111, Orientation::kBarBar1, Orientation::kBar11}) {
    const Splittings s = splittings(p, b, o);
    const Splittings flipped = splittings(p, -b, o);
    CHECK(std::abs(s.delta_41 - flipped.delta_41) < 1e-12 * s.delta_41);
    CHECK(std::abs(s.delta_32 - flipped.delta_32) < 1e-12 * s.delta_41);
    CHECK(s.delta_41 > s.delta_32);
    CHECK(s.delta_41 < aligned.delta_41);
  }
}

TEST_CASE("no level crossings as the field grows") {
  const ZeemanParams p = ZeemanParams::from_orbital_splitting();
  const Eigen::Vector3d dir = crystal_to_internal(field_along({1, -1, 1}, 1.0), Orientation::k111);
  double min_gap = 1e300;
  for (int i = 20; i <= 200; ++i) {
    const auto e = eigenvalues_numeric(p, dir * kGHz * 20 * i / 200.0);
    for (int k = 0; k < 3; ++k) min_gap = std::min(min_gap, e[k + 1] - e[k]);
  }
  CHECK(min_gap > kGHz * 0.1);
}
