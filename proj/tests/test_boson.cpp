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

#include "sivsq/boson.hpp"
#include "sivsq/collective_spin.hpp"
#include "test_util.hpp"

using namespace sivsq;
using sivsq::test::commutator;
using sivsq::test::max_abs;

TEST_CASE("annihilation and number operators") {
  CMatrix a1(2, 2);
  a1 << 0, 1, 0, 0;
  CHECK(max_abs(CMatrix(build_annihilation({1})) - a1) == 0.0);
  const CMatrix n = build_number({3});
  for (int i = 0; i < 4; ++i) CHECK(n(i, i).real() == double(i));
  CHECK(max_abs(n - CMatrix(n.diagonal().asDiagonal())) == 0.0);
  CHECK_THROWS_AS(validate(FockBasis{0}), ValidationError);
}

TEST_CASE("truncated commutator deviates only in the corner") {
  const FockBasis f{5};
  const SparseCMatrix a = build_annihilation(f);
  CMatrix c = commutator(a, adjoint(a));
  CHECK(std::abs(c(5, 5) + 5.0) < 1e-14);
  c(5, 5) = 1.0;
  CHECK(max_abs(c - CMatrix::Identity(6, 6)) < 1e-14);
}

TEST_CASE("fock states") {
  const FockBasis f{3};
  CHECK(fock_state(f, 0)(0) == Complex(1.0));
  CHECK(fock_state(f, 3)(3) == Complex(1.0));
  CHECK_THROWS_AS(fock_state(f, 4), ValidationError);
  CHECK_THROWS_AS(fock_state(f, -1), ValidationError);
}

TEST_CASE("tensor product conventions") {
  const SpinOperators ops = build_spin_operators(SpinBasis(4));
  const FockBasis f{3};
  const SparseCMatrix a = build_annihilation(f);
  const SparseCMatrix id_s = identity(5), id_f = identity(4);
  CHECK(max_abs(CMatrix(tensor_product(id_s, id_f)) - CMatrix::Identity(20, 20)) == 0.0);
  const SparseCMatrix left = tensor_product(ops.s_minus, id_f);
  const SparseCMatrix right = tensor_product(id_s, adjoint(a));
  CHECK(max_abs(CMatrix(left * right) - CMatrix(tensor_product(ops.s_minus, adjoint(a)))) < 1e-14);
  CHECK(max_abs(commutator(left, right)) < 1e-14);
  CHECK(left.rows() == 5 * 4);
  // index = i_spin * dim_f + n
  const CVector v = tensor_product(CVector(dicke_state(ops.basis, -1)), fock_state(f, 2));
  CHECK(v(1 * 4 + 2) == Complex(1.0));
  const CMatrix dense = tensor_product(CMatrix(ops.s_z), CMatrix(a));
  CHECK(max_abs(dense - CMatrix(tensor_product(ops.s_z, a))) == 0.0);
}
