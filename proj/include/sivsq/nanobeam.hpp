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

// Euler-Bernoulli bending modes of a doubly clamped beam and the strain
// coupling of SiV centers embedded in it. SI units throughout.

#include <array>
#include <string>
#include <vector>

#include "sivsq/types.hpp"

namespace sivsq {

inline constexpr double kHbar = 1.054571817e-34;

struct BeamGeometry {
  double L = 6.29e-6;
  double w = 0.5e-6;
  double t = 0.5e-6;

  double area() const { return w * t; }
  double second_moment() const { return w * t * t * t / 12.0; }
  // Throws on non-positive sizes; returns a warning when L is not much
  // longer than the cross-section.
  std::vector<std::string> validate() const;
};

struct Material {
  double E = 1.05e12;
  double rho = 3500.0;
  double nu = 0.2;
  void validate() const;
};

struct StrainSusceptibilities {
  // Angular frequency per unit strain; default reproduces g = 2pi x 10 MHz
  // at eps0 = 8e-9, nu = 0.2.
  double d = 2.0 * kPi * 1.0416666666666667e15;
  double f = 0.0;
  double t_perp = 0.0;
  double t_par = 0.0;
};

struct ModeSolution {
  int n = 0;         // 1-based mode index
  double kL = 0.0;
  double k = 0.0;
  double omega = 0.0;
  double I = 0.0;
  double A = 0.0;
};

// First `count` positive roots of cos x cosh x = 1, ascending. Each root
// satisfies |cos x - 1/cosh x| < 1e-12.
std::vector<double> solve_wavenumbers(int count);
double wavenumber_residual(double kL);
// Root of cos x cosh x = 1 nearest to kL.
double nearest_root(double kL);

enum class ModeNormalization {
  kAsWritten,       // the closed-form profile without rescaling
  kUnitMeanSquare,  // (1/L) int u^2 dY = 1
  kMaxAmplitude,    // max |u| = 1 on [0, L]
};

// Mode profile with cos x cosh x = 1 assumed only through kL; hyperbolic
// terms are evaluated with factored exponentials so large kL is safe.
class ModeShape {
 public:
  ModeShape(double k, double L, ModeNormalization normalization = ModeNormalization::kAsWritten);
  double value(double Y) const;
  double slope(double Y) const;
  double curvature(double Y) const;  // d^2u/dY^2
  double scale() const { return scale_; }

 private:
  double raw(double Y, int derivative) const;
  double k_;
  double L_;
  double sigma_;
  double one_minus_sigma_scaled_;  // (1 - sigma) e^{kL} / 2
  double one_plus_sigma_;
  double scale_ = 1.0;
};

double eigenfrequency(const BeamGeometry& geom, const Material& material, double k);
ModeSolution solve_mode(const BeamGeometry& geom, const Material& material, double kL);

struct StrainOptions {
  double Y = -1.0;   // default L/2
  double R0 = -1.0;  // default t/2
  ModeNormalization normalization = ModeNormalization::kUnitMeanSquare;
};

double zero_point_strain(const BeamGeometry& geom, const Material& material,
                         const ModeSolution& mode, const StrainOptions& options = {});

enum class Orientation { k111, kBarBar1, kBar11, k1Bar1 };  // [111], [-1-11], [-111], [1-11]

Orientation parse_orientation(const std::string& name);
std::string orientation_name(Orientation o);
std::array<Orientation, 4> all_orientations();
bool is_transverse(Orientation o);

// Rotation whose rows are the SiV internal axes (x, y, z) in crystal
// coordinates. z is the symmetry axis; y is the beam axis Y = [110] when
// it is perpendicular to z, otherwise X = [1-10]; x = y cross z.
RMatrix internal_frame(Orientation o);

// Beam-frame strain diag(-nu, 1, -nu) eps rotated into the SiV frame.
RMatrix strain_tensor(Orientation o, double epsilon, double nu);

// |d (eps_xx - eps_yy)|: (1 + nu) eps d transverse, one third of that axial.
double coupling_strength(double epsilon0, const StrainSusceptibilities& s, double nu,
                         Orientation o);

// Expresses an SI angular frequency in units of the coupling g.
inline double in_units_of(double value, double g) { return value / g; }

struct DeviceReport {
  BeamGeometry geometry;
  Material material;
  StrainSusceptibilities susceptibilities;
  ModeSolution mode;
  ModeNormalization normalization;
  double epsilon0;
  std::array<double, 4> coupling;  // per all_orientations()
  std::vector<std::string> warnings;
};

DeviceReport device_report(const BeamGeometry& geom, const Material& material,
                           const StrainSusceptibilities& s, double kL_target = 67.55,
                           ModeNormalization normalization = ModeNormalization::kUnitMeanSquare);

}  // namespace sivsq
