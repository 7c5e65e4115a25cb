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

#include "sivsq/nanobeam.hpp"

#include <cmath>

namespace sivsq {

std::vector<std::string> BeamGeometry::validate() const {
  if (!(L > 0.0 && w > 0.0 && t > 0.0)) throw ValidationError("beam sizes must be positive");
  std::vector<std::string> warnings;
  if (L / std::max(w, t) < 5.0) warnings.push_back("beam is not slender (L/max(w,t) < 5)");
  return warnings;
}

void Material::validate() const {
  if (!(E > 0.0 && rho > 0.0 && nu > 0.0)) {
    throw ValidationError("material constants must be positive");
  }
  if (!(nu < 0.5)) throw ValidationError("Poisson ratio must be below 0.5");
}

double wavenumber_residual(double x) { return std::cos(x) - 1.0 / std::cosh(x); }

namespace {

// Bisection of cos x - sech x on [a, b] to full precision.
double bisect(double a, double b) {
  double fa = wavenumber_residual(a);
  for (int it = 0; it < 200 && b - a > 1e-15 * b; ++it) {
    const double m = 0.5 * (a + b);
    const double fm = wavenumber_residual(m);
    if (fm == 0.0) return m;
    if ((fm < 0.0) == (fa < 0.0)) {
      a = m;
      fa = fm;
    } else {
      b = m;
    }
  }
  return 0.5 * (a + b);
}

}  // namespace

// The n-th root lies in (n pi, (n+1) pi) where cos changes sign and sech is tiny.
std::vector<double> solve_wavenumbers(int count) {
  if (count < 1) throw ValidationError("count must be >= 1");
  std::vector<double> roots;
  roots.reserve(count);
  for (int n = 1; n <= count; ++n) roots.push_back(bisect(n * kPi, (n + 0.5) * kPi + 0.1));
  return roots;
}

double nearest_root(double kL) {
  if (!(kL > 0.0)) throw ValidationError("kL must be positive");
  const int n = std::max(1, static_cast<int>(std::lround(kL / kPi - 0.5)));
  double best = 0.0;
  for (int m = std::max(1, n - 1); m <= n + 1; ++m) {
    const double r = bisect(m * kPi, (m + 0.5) * kPi + 0.1);
    if (best == 0.0 || std::abs(r - kL) < std::abs(best - kL)) best = r;
  }
  return best;
}

ModeShape::ModeShape(double k, double L, ModeNormalization normalization) : k_(k), L_(L) {
  if (!(k > 0.0 && L > 0.0)) throw ValidationError("k and L must be positive");
  const double x = k * L;
  const double e = std::exp(-x);
  const double denom = 2.0 * e * std::sin(x) - 1.0 + e * e;
  sigma_ = (2.0 * e * std::cos(x) - 1.0 - e * e) / denom;
  one_minus_sigma_scaled_ = (std::sin(x) - std::cos(x) + e) / denom;
  one_plus_sigma_ = (2.0 * e * (std::sin(x) + std::cos(x)) - 2.0) / denom;

  if (normalization == ModeNormalization::kAsWritten) return;
  const int samples = std::max(4000, static_cast<int>(200 * x));
  const double h = L / samples;
  if (normalization == ModeNormalization::kUnitMeanSquare) {
    double acc = 0.0;
    for (int i = 0; i <= samples; ++i) {
      const double u = raw(i * h, 0);
      const double wgt = (i == 0 || i == samples) ? 1.0 : (i % 2 ? 4.0 : 2.0);
      acc += wgt * u * u;
    }
    scale_ = 1.0 / std::sqrt(acc * h / 3.0 / L);
  } else {
    double peak = 0.0;
    for (int i = 0; i <= samples; ++i) peak = std::max(peak, std::abs(raw(i * h, 0)));
    scale_ = 1.0 / peak;
  }
}

// u = cos kY - sigma sin kY - [(1-sigma) e^{kY} + (1+sigma) e^{-kY}] / 2
double ModeShape::raw(double Y, int derivative) const {
  const double c = std::cos(k_ * Y);
  const double s = std::sin(k_ * Y);
  const double grow = one_minus_sigma_scaled_ * std::exp(k_ * (Y - L_));
  const double decay = 0.5 * one_plus_sigma_ * std::exp(-k_ * Y);
  switch (derivative) {
    case 0:
      return c - sigma_ * s - (grow + decay);
    case 1:
      return k_ * (-s - sigma_ * c - (grow - decay));
    default:
      return k_ * k_ * (-c + sigma_ * s - (grow + decay));
  }
}

double ModeShape::value(double Y) const { return scale_ * raw(Y, 0); }
double ModeShape::slope(double Y) const { return scale_ * raw(Y, 1); }
double ModeShape::curvature(double Y) const { return scale_ * raw(Y, 2); }

double eigenfrequency(const BeamGeometry& geom, const Material& material, double k) {
  return k * k * std::sqrt(material.E * geom.second_moment() / (material.rho * geom.area()));
}

ModeSolution solve_mode(const BeamGeometry& geom, const Material& material, double kL) {
  geom.validate();
  material.validate();
  ModeSolution m;
  m.kL = kL;
  m.n = static_cast<int>(std::lround(kL / kPi - 0.5));
  m.k = kL / geom.L;
  m.I = geom.second_moment();
  m.A = geom.area();
  m.omega = eigenfrequency(geom, material, m.k);
  return m;
}

double zero_point_strain(const BeamGeometry& geom, const Material& material,
                         const ModeSolution& mode, const StrainOptions& options) {
  const double Y = options.Y < 0.0 ? 0.5 * geom.L : options.Y;
  const double R0 = options.R0 < 0.0 ? 0.5 * geom.t : options.R0;
  if (Y > geom.L) throw ValidationError("position outside the beam");
  const ModeShape shape(mode.k, geom.L, options.normalization);
  const double zpf = std::sqrt(kHbar / (2.0 * material.rho * geom.area() * geom.L * mode.omega));
  return -R0 * zpf * shape.curvature(Y);
}

Orientation parse_orientation(const std::string& name) {
  if (name == "111" || name == "[111]") return Orientation::k111;
  if (name == "-1-11" || name == "[-1-11]") return Orientation::kBarBar1;
  if (name == "-111" || name == "[-111]") return Orientation::kBar11;
  if (name == "1-11" || name == "[1-11]") return Orientation::k1Bar1;
  throw ValidationError("unknown orientation '" + name + "'");
}

std::string orientation_name(Orientation o) {
  switch (o) {
    case Orientation::k111: return "[111]";
    case Orientation::kBarBar1: return "[-1-11]";
    case Orientation::kBar11: return "[-111]";
    case Orientation::k1Bar1: return "[1-11]";
  }
  return "?";
}

std::array<Orientation, 4> all_orientations() {
  return {Orientation::k111, Orientation::kBarBar1, Orientation::kBar11, Orientation::k1Bar1};
}

bool is_transverse(Orientation o) {
  return o == Orientation::kBar11 || o == Orientation::k1Bar1;
}

RMatrix internal_frame(Orientation o) {
  Eigen::Vector3d z;
  switch (o) {
    case Orientation::k111: z << 1, 1, 1; break;
    case Orientation::kBarBar1: z << -1, -1, 1; break;
    case Orientation::kBar11: z << -1, 1, 1; break;
    case Orientation::k1Bar1: z << 1, -1, 1; break;
  }
  z.normalize();
  const Eigen::Vector3d beam_y = Eigen::Vector3d(1, 1, 0).normalized();
  const Eigen::Vector3d beam_x = Eigen::Vector3d(1, -1, 0).normalized();
  const Eigen::Vector3d y = std::abs(z.dot(beam_y)) < 1e-12 ? beam_y : beam_x;
  const Eigen::Vector3d x = y.cross(z);
  RMatrix r(3, 3);
  r.row(0) = x.transpose();
  r.row(1) = y.transpose();
  r.row(2) = z.transpose();
  return r;
}

RMatrix strain_tensor(Orientation o, double epsilon, double nu) {
  // Beam frame (X, Y, Z) = ([1-10], [110], [001]) to crystal coordinates.
  RMatrix beam(3, 3);
  beam.row(0) = Eigen::Vector3d(1, -1, 0).normalized().transpose();
  beam.row(1) = Eigen::Vector3d(1, 1, 0).normalized().transpose();
  beam.row(2) = Eigen::Vector3d(0, 0, 1).transpose();
  RMatrix eps_beam = RMatrix::Zero(3, 3);
  eps_beam(0, 0) = -nu * epsilon;
  eps_beam(1, 1) = epsilon;
  eps_beam(2, 2) = -nu * epsilon;
  const RMatrix eps_crystal = beam.transpose() * eps_beam * beam;
  const RMatrix r = internal_frame(o);
  return r * eps_crystal * r.transpose();
}

double coupling_strength(double epsilon0, const StrainSusceptibilities& s, double nu,
                         Orientation o) {
  const RMatrix eps = strain_tensor(o, epsilon0, nu);
  return std::abs(s.d * (eps(0, 0) - eps(1, 1)));
}

DeviceReport device_report(const BeamGeometry& geom, const Material& material,
                           const StrainSusceptibilities& s, double kL_target,
                           ModeNormalization normalization) {
  DeviceReport rep;
  rep.geometry = geom;
  rep.material = material;
  rep.susceptibilities = s;
  rep.normalization = normalization;
  rep.warnings = geom.validate();
  material.validate();
  rep.mode = solve_mode(geom, material, nearest_root(kL_target));
  StrainOptions opts;
  opts.normalization = normalization;
  rep.epsilon0 = zero_point_strain(geom, material, rep.mode, opts);
  const auto os = all_orientations();
  for (size_t i = 0; i < os.size(); ++i) {
    rep.coupling[i] = coupling_strength(rep.epsilon0, s, material.nu, os[i]);
  }
  return rep;
}

}  // namespace sivsq
