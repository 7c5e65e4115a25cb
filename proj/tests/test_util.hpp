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

#include "sivsq/types.hpp"

namespace sivsq::test {

inline double max_abs(const CMatrix& m) { return m.size() ? m.cwiseAbs().maxCoeff() : 0.0; }
inline double max_abs(const SparseCMatrix& m) { return max_abs(CMatrix(m)); }

inline CMatrix commutator(const SparseCMatrix& a, const SparseCMatrix& b) {
  return CMatrix(a) * CMatrix(b) - CMatrix(b) * CMatrix(a);
}

// Random Hermitian positive matrix with unit trace.
inline CMatrix random_density(int dim, unsigned seed) {
  std::srand(seed);
  const CMatrix a = CMatrix::Random(dim, dim);
  CMatrix rho = a * a.adjoint();
  return rho / rho.trace();
}

}  // namespace sivsq::test
