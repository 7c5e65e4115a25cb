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

// Matrix-free evaluation of the Lindblad right-hand side.
//
// LiouvillianKernel::apply is the production path: column-blocked and
// OpenMP-parallel, it exploits rho = rho^dag so each non-diagonal jump costs
// three sparse-dense products, and folds all diagonal jumps into a single
// elementwise factor. lindblad_rhs_reference is the literal textbook formula,
// serial, kept as the oracle for tests and the benchmark baseline.

#include <vector>

#include "sivsq/lindblad.hpp"

namespace sivsq {

class LiouvillianKernel {
 public:
  explicit LiouvillianKernel(const LindbladModel& model);

  int dim() const { return dim_; }

  // out = L_t(rho). rho must be Hermitian; out is Hermitian by construction.
  // Holds scratch buffers, so one kernel must not be shared between threads.
  void apply(double t, const CMatrix& rho, CMatrix& out) const;

 private:
  struct GeneralJump {
    double rate;
    SparseCMatrix op;
    SparseCMatrix op_adj;
  };

  int dim_;
  SparseCMatrix h_static_;
  std::vector<HarmonicTerm> harmonics_;
  std::vector<SparseCMatrix> harmonic_adj_;
  std::vector<GeneralJump> jumps_;
  bool has_diagonal_ = false;
  CMatrix diagonal_factor_;  // W_ab = sum_k r_k (2 l_a conj(l_b) - |l_a|^2 - |l_b|^2)

  mutable CMatrix acc_;
  mutable CMatrix x_;
  mutable CMatrix x_adj_;
};

DensityMatrix lindblad_rhs_reference(const LindbladModel& model, const DensityMatrix& rho,
                                     double t);

// Number of columns per work item in the parallel kernel.
int kernel_column_block(int dim);

}  // namespace sivsq
