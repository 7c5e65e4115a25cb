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

#include "sivsq/boson.hpp"

#include <cmath>
#include <string>
#include <vector>

namespace sivsq {

void validate(const FockBasis& basis) {
  if (basis.n_max < 1) throw ValidationError("Fock truncation n_max must be >= 1");
}

SparseCMatrix build_annihilation(const FockBasis& basis) {
  validate(basis);
  std::vector<Eigen::Triplet<Complex>> t;
  for (int n = 1; n <= basis.n_max; ++n) t.emplace_back(n - 1, n, std::sqrt(double(n)));
  SparseCMatrix a(basis.dim(), basis.dim());
  a.setFromTriplets(t.begin(), t.end());
  return a;
}

SparseCMatrix build_number(const FockBasis& basis) {
  validate(basis);
  std::vector<Eigen::Triplet<Complex>> t;
  for (int n = 1; n <= basis.n_max; ++n) t.emplace_back(n, n, double(n));
  SparseCMatrix num(basis.dim(), basis.dim());
  num.setFromTriplets(t.begin(), t.end());
  return num;
}

CVector fock_state(const FockBasis& basis, int n) {
  validate(basis);
  if (n < 0 || n > basis.n_max) {
    throw ValidationError("Fock occupation " + std::to_string(n) + " outside [0, " +
                          std::to_string(basis.n_max) + "]");
  }
  CVector v = CVector::Zero(basis.dim());
  v(n) = 1.0;
  return v;
}

SparseCMatrix identity(int dim) {
  SparseCMatrix id(dim, dim);
  id.setIdentity();
  return id;
}

SparseCMatrix tensor_product(const SparseCMatrix& a, const SparseCMatrix& b) {
  std::vector<Eigen::Triplet<Complex>> t;
  t.reserve(static_cast<size_t>(a.nonZeros()) * b.nonZeros());
  for (int i = 0; i < a.outerSize(); ++i) {
    for (SparseCMatrix::InnerIterator ia(a, i); ia; ++ia) {
      for (int k = 0; k < b.outerSize(); ++k) {
        for (SparseCMatrix::InnerIterator ib(b, k); ib; ++ib) {
          t.emplace_back(ia.row() * b.rows() + ib.row(), ia.col() * b.cols() + ib.col(),
                         ia.value() * ib.value());
        }
      }
    }
  }
  SparseCMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  out.setFromTriplets(t.begin(), t.end());
  return out;
}

CMatrix tensor_product(const CMatrix& a, const CMatrix& b) {
  CMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

CVector tensor_product(const CVector& a, const CVector& b) {
  CVector out(a.size() * b.size());
  for (Eigen::Index i = 0; i < a.size(); ++i) out.segment(i * b.size(), b.size()) = a(i) * b;
  return out;
}

}  // namespace sivsq
