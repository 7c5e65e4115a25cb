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

#include "sivsq/kernels.hpp"

#include <algorithm>

#include <omp.h>

namespace sivsq {

namespace {

bool is_diagonal(const SparseCMatrix& m) {
  for (int i = 0; i < m.outerSize(); ++i) {
    for (SparseCMatrix::InnerIterator it(m, i); it; ++it) {
      if (it.row() != it.col() && it.value() != Complex(0.0)) return false;
    }
  }
  return true;
}

}  // namespace

int kernel_column_block(int dim) { return std::max(1, std::min(dim, 32)); }

LiouvillianKernel::LiouvillianKernel(const LindbladModel& model)
    : dim_(model.dim()), h_static_(model.h_static()), harmonics_(model.harmonics()) {
  model.validate(1e-10);
  for (const auto& term : harmonics_) harmonic_adj_.push_back(adjoint(term.op));
  for (const auto& jump : model.jumps()) {
    if (jump.rate == 0.0) continue;
    if (is_diagonal(jump.op)) {
      if (!has_diagonal_) {
        diagonal_factor_ = CMatrix::Zero(dim_, dim_);
        has_diagonal_ = true;
      }
      const CVector l = CMatrix(jump.op).diagonal();
      const RVector l2 = l.cwiseAbs2();
      for (int b = 0; b < dim_; ++b) {
        for (int a = 0; a < dim_; ++a) {
          diagonal_factor_(a, b) +=
              jump.rate * (2.0 * l(a) * std::conj(l(b)) - l2(a) - l2(b));
        }
      }
    } else {
      jumps_.push_back({jump.rate, jump.op, adjoint(jump.op)});
    }
  }
  acc_.resize(dim_, dim_);
  x_.resize(dim_, dim_);
  x_adj_.resize(dim_, dim_);
}

void LiouvillianKernel::apply(double t, const CMatrix& rho, CMatrix& out) const {
  const int n = dim_;
  const int block = kernel_column_block(n);
  const int blocks = (n + block - 1) / block;
  out.resize(n, n);

  std::vector<Complex> phases;
  phases.reserve(harmonics_.size());
  for (const auto& term : harmonics_) phases.push_back(std::exp(kI * term.frequency * t));

  // acc = -i H(t) rho (+ W o rho / 2)
#pragma omp parallel for schedule(static)
  for (int b = 0; b < blocks; ++b) {
    const int j0 = b * block;
    const int nb = std::min(block, n - j0);
    auto cols = acc_.middleCols(j0, nb);
    const auto rho_cols = rho.middleCols(j0, nb);
    cols.noalias() = h_static_ * rho_cols;
    for (size_t k = 0; k < harmonics_.size(); ++k) {
      cols.noalias() += phases[k] * (harmonics_[k].op * rho_cols);
      cols.noalias() += std::conj(phases[k]) * (harmonic_adj_[k] * rho_cols);
    }
    cols *= -kI;
    if (has_diagonal_) {
      cols += 0.5 * diagonal_factor_.middleCols(j0, nb).cwiseProduct(rho_cols);
    }
  }

  for (const auto& jump : jumps_) {
    // x = L rho;  acc += r (L x^dag - L^dag x)
#pragma omp parallel for schedule(static)
    for (int b = 0; b < blocks; ++b) {
      const int j0 = b * block;
      const int nb = std::min(block, n - j0);
      x_.middleCols(j0, nb).noalias() = jump.op * rho.middleCols(j0, nb);
    }
#pragma omp parallel for schedule(static)
    for (int b = 0; b < blocks; ++b) {
      const int j0 = b * block;
      const int nb = std::min(block, n - j0);
      x_adj_.middleCols(j0, nb) = x_.middleRows(j0, nb).adjoint();
    }
#pragma omp parallel for schedule(static)
    for (int b = 0; b < blocks; ++b) {
      const int j0 = b * block;
      const int nb = std::min(block, n - j0);
      auto cols = acc_.middleCols(j0, nb);
      cols.noalias() += jump.rate * (jump.op * x_adj_.middleCols(j0, nb));
      cols.noalias() -= jump.rate * (jump.op_adj * x_.middleCols(j0, nb));
    }
  }

  // out = acc + acc^dag
#pragma omp parallel for schedule(static)
  for (int b = 0; b < blocks; ++b) {
    const int j0 = b * block;
    const int nb = std::min(block, n - j0);
    out.middleCols(j0, nb) = acc_.middleCols(j0, nb) + acc_.middleRows(j0, nb).adjoint();
  }
}

DensityMatrix lindblad_rhs_reference(const LindbladModel& model, const DensityMatrix& rho,
                                     double t) {
  const SparseCMatrix h = model.hamiltonian_at(t);
  DensityMatrix out = -kI * (h * rho - rho * h);
  for (const auto& jump : model.jumps()) {
    const SparseCMatrix l_adj = adjoint(jump.op);
    const SparseCMatrix ldl = l_adj * jump.op;
    out += jump.rate * (2.0 * (jump.op * rho * l_adj) - rho * ldl - ldl * rho);
  }
  return out;
}

}  // namespace sivsq
