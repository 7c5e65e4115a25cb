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

#include "sivsq/nanobeam.hpp"

using namespace sivsq;

namespace {

RMatrix closed_form(Orientation o, double e, double nu) {
  RMatrix m = RMatrix::Zero(3, 3);
  if (is_transverse(o)) {
    m.diagonal() << -nu * e, e, -nu * e;
    return m;
  }
  const double off = (o == Orientation::k111 ? -1.0 : 1.0) * std::sqrt(2.0) / 3.0 * (1 + nu) * e;
  m << (1 - 2 * nu) * e / 3, 0, off, 0, -nu * e, 0, off, 0, (2 - nu) * e / 3;
  return m;
}

}  // namespace

TEST_CASE("clamped-clamped wavenumbers") {
  const auto roots = solve_wavenumbers(25);
  REQUIRE(roots.size() == 25);
  CHECK(std::abs(roots[0] - 4.730040744862704) < 1e-10);
  CHECK(std::abs(roots[1] - 7.853204624095838) < 1e-10);
  for (size_t i = 0; i < roots.size(); ++i) {
    CHECK(std::abs(wavenumber_residual(roots[i])) < 1e-12);
    if (i) CHECK(roots[i] > roots[i - 1]);
  }
  // the operating root lies in the sequence (mode 21)
  CHECK(std::abs(roots[20] - 67.5442420521806) < 1e-8);
  CHECK(nearest_root(67.55) == roots[20]);
}

TEST_CASE("mode shape satisfies the clamped boundary conditions at large kL") {
  const double L = 6.29e-6;
  for (ModeNormalization norm : {ModeNormalization::kAsWritten, ModeNormalization::kUnitMeanSquare,
                                 ModeNormalization::kMaxAmplitude}) {
    for (double kL : {solve_wavenumbers(1)[0], nearest_root(67.55)}) {
      const ModeShape u(kL / L, L, norm);
      double peak = 0.0;
      for (int i = 0; i <= 2000; ++i) peak = std::max(peak, std::abs(u.value(L * i / 2000.0)));
      const double k = kL / L;
      CHECK(std::abs(u.value(0.0)) <= 1e-9 * peak);
      CHECK(std::abs(u.slope(0.0)) <= 1e-9 * peak * k);
      CHECK(std::abs(u.value(L)) <= 1e-6 * peak);
      CHECK(std::abs(u.slope(L)) <= 1e-6 * peak * k);
      CHECK(std::isfinite(u.curvature(0.5 * L)));
      CHECK(std::abs(u.curvature(0.5 * L)) > 0.1 * peak * k * k);
      if (norm == ModeNormalization::kMaxAmplitude) CHECK(std::abs(peak - 1.0) < 1e-3);
    }
  }
}

TEST_CASE("unit mean square normalization") {
  const double L = 1.0;
  const double k = nearest_root(30.0);
  const ModeShape u(k / L, L, ModeNormalization::kUnitMeanSquare);
  const int n = 20000;
  double acc = 0.0;
  for (int i = 0; i < n; ++i) {
    const double y = (i + 0.5) * L / n;
    acc += u.value(y) * u.value(y);
  }
  CHECK(std::abs(acc / n - 1.0) < 1e-6);
}

TEST_CASE("eigenfrequency at the operating point and its scaling") {
  const BeamGeometry g;
  const Material m;
  const ModeSolution s = solve_mode(g, m, 67.55);
  CHECK(std::abs(s.omega / (2 * kPi) / 45.9e9 - 1.0) < 0.01);
  BeamGeometry g2 = g;
  g2.L *= 2;
  g2.t *= 3;
  CHECK(std::abs(solve_mode(g2, m, 67.55).omega / s.omega - 3.0 / 4.0) < 1e-12);
  Material m2 = m;
  m2.E *= 2;
  CHECK(std::abs(solve_mode(g, m2, 67.55).omega / s.omega - std::sqrt(2.0)) < 1e-12);
}

TEST_CASE("zero-point strain") {
  const BeamGeometry g;
  const Material m;
  const ModeSolution s = solve_mode(g, m, 67.55);
  const double eps = std::abs(zero_point_strain(g, m, s));
  CHECK(eps > 6e-9);
  CHECK(eps < 1e-8);
  // curvature vanishes on the neutral axis
  StrainOptions axis;
  axis.R0 = 0.0;
  CHECK(zero_point_strain(g, m, s, axis) == 0.0);
  // at fixed cross-section and kL the strain scales as L^{-3/2}
  BeamGeometry longer = g;
  longer.L *= 2;
  const double eps2 = std::abs(zero_point_strain(longer, m, solve_mode(longer, m, 67.55)));
  CHECK(std::abs(eps2 / eps - std::pow(2.0, -1.5)) < 1e-9);
}

TEST_CASE("geometry and material validation") {
  BeamGeometry squat;
  squat.L = 1e-6;
  CHECK(squat.validate().size() == 1);
  CHECK(BeamGeometry{}.validate().empty());
  BeamGeometry bad;
  bad.w = -1.0;
  CHECK_THROWS_AS(bad.validate(), ValidationError);
  Material m;
  m.nu = 0.6;
  CHECK_THROWS_AS(m.validate(), ValidationError);
}

TEST_CASE("internal frames and rotated strain tensors") {
  const double nu = 0.2, e = 1.7;
  for (Orientation o : all_orientations()) {
    const RMatrix r = internal_frame(o);
    CHECK((r * r.transpose() - RMatrix::Identity(3, 3)).cwiseAbs().maxCoeff() < 1e-15);
    CHECK(std::abs(r.determinant() - 1.0) < 1e-15);
    const RMatrix s = strain_tensor(o, e, nu);
    CHECK((s - closed_form(o, e, nu)).cwiseAbs().maxCoeff() < 1e-12);
    CHECK(std::abs(s.trace() - (1 - 2 * nu) * e) < 1e-12);
    CHECK(parse_orientation(orientation_name(o)) == o);
  }
  CHECK_THROWS_AS(parse_orientation("[100]"), ValidationError);
}

TEST_CASE("strain coupling") {
  const StrainSusceptibilities s;
  const double gt = coupling_strength(8e-9, s, 0.2, Orientation::k1Bar1);
  CHECK(std::abs(gt / (2 * kPi * 10e6) - 1.0) < 1e-12);
  const double ga = coupling_strength(8e-9, s, 0.2, Orientation::k111);
  CHECK(std::abs(ga / gt - 1.0 / 3.0) < 1e-14);
  CHECK(coupling_strength(0.0, s, 0.2, Orientation::kBar11) == 0.0);
  CHECK(in_units_of(2 * gt, gt) == 2.0);
}

TEST_CASE("device report") {
  const DeviceReport r = device_report(BeamGeometry{}, Material{}, StrainSusceptibilities{});
  CHECK(std::abs(r.mode.kL - nearest_root(67.55)) < 1e-12);
  CHECK(r.coupling[0] == r.coupling[1]);
  CHECK(r.coupling[2] == r.coupling[3]);
  CHECK(std::abs(r.coupling[0] / r.coupling[2] - 1.0 / 3.0) < 1e-14);
}
