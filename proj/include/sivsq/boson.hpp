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

// Truncated Fock space and spin (left) x phonon (right) composition.

#include "sivsq/types.hpp"

namespace sivsq {

struct FockBasis {
  int n_max;            // highest retained occupation, >= 1
  double omega0 = 0.0;  // mode frequency in the unit system of the caller

  int dim() const { return n_max + 1; }
};

void validate(const FockBasis& basis);

// <n-1|a|n> = sqrt(n). [a, a^dag] equals the identity except in the last
// diagonal entry, where truncation leaves -n_max.
SparseCMatrix build_annihilation(const FockBasis& basis);
SparseCMatrix build_number(const FockBasis& basis);

CVector fock_state(const FockBasis& basis, int n);

SparseCMatrix identity(int dim);

// Kronecker product A (x) B; index = i_A * dim(B) + i_B.
SparseCMatrix tensor_product(const SparseCMatrix& a, const SparseCMatrix& b);
CMatrix tensor_product(const CMatrix& a, const CMatrix& b);
CVector tensor_product(const CVector& a, const CVector& b);

}  // namespace sivsq
