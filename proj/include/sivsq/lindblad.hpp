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

// Lindblad models in the dissipator convention
//   D[o] rho = 2 o rho o^dag - rho o^dag o - o^dag o rho,
// so a jump (o, r) contributes r * D[o] rho. Note the factor 2: rates are
// twice what the 1/2-convention would call them.

#include <vector>

#include "sivsq/types.hpp"

namespace sivsq {

// Contributes op * exp(i nu t) + op^dag * exp(-i nu t) to H(t).
struct HarmonicTerm {
  SparseCMatrix op;
  double frequency;
};

struct Jump {
  SparseCMatrix op;
  double rate;
};

class LindbladModel {
 public:
  explicit LindbladModel(SparseCMatrix h_static);
  LindbladModel(SparseCMatrix h_static, std::vector<HarmonicTerm> harmonics,
                std::vector<Jump> jumps);

  int dim() const { return static_cast<int>(h_static_.rows()); }
  const SparseCMatrix& h_static() const { return h_static_; }
  const std::vector<HarmonicTerm>& harmonics() const { return harmonics_; }
  const std::vector<Jump>& jumps() const { return jumps_; }
  bool time_dependent() const { return !harmonics_.empty(); }

  LindbladModel& add_jump(SparseCMatrix op, double rate);
  LindbladModel& add_harmonic(SparseCMatrix op, double frequency);

  SparseCMatrix hamiltonian_at(double t) const;

  // Throws ValidationError on dimension mismatch, negative rates or a
  // non-Hermitian static Hamiltonian (tolerance hermitian_tol in max norm).
  void validate(double hermitian_tol = 1e-12) const;

 private:
  SparseCMatrix h_static_;
  std::vector<HarmonicTerm> harmonics_;
  std::vector<Jump> jumps_;
};

using DensityMatrix = CMatrix;

DensityMatrix pure_density(const CVector& psi);

struct DensityDiagnostics {
  double trace_error;        // |tr rho - 1|
  double hermiticity_error;  // max |rho - rho^dag|
  double min_eigenvalue;     // of the Hermitian part; NaN when not requested
};

DensityDiagnostics check_density_matrix(const DensityMatrix& rho, bool with_spectrum = true);

// <psi|rho|psi> for normalized psi.
double fidelity(const CVector& psi, const DensityMatrix& rho);
// Uhlmann fidelity (tr sqrt(sqrt(rho) sigma sqrt(rho)))^2.
double fidelity(const DensityMatrix& rho, const DensityMatrix& sigma);

// drho/dt evaluated without forming the superoperator.
DensityMatrix liouvillian_rhs(const LindbladModel& model, const DensityMatrix& rho, double t);

// Dense dim^2 x dim^2 superoperator acting on column-major vec(rho).
// Only for small models (null-space steady states, tests).
CMatrix build_superoperator(const LindbladModel& model, double t = 0.0);
// Same operator in sparse column-major storage.
Eigen::SparseMatrix<Complex> build_sparse_superoperator(const LindbladModel& model,
                                                        double t = 0.0);

}  // namespace sivsq
