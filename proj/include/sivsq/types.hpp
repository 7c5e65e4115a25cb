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

#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>
#include <Eigen/Sparse>

namespace sivsq {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using RMatrix = Eigen::MatrixXd;
using RVector = Eigen::VectorXd;
// Row-major so that operator * dense-column products stream through rows.
using SparseCMatrix = Eigen::SparseMatrix<Complex, Eigen::RowMajor>;

inline constexpr Complex kI{0.0, 1.0};
inline constexpr double kPi = 3.14159265358979323846;

// Rejected input: a precondition of an operation does not hold. The CLI maps
// these to its validation exit code.
class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A numerical procedure failed on valid input (integrator underflow,
// non-unique steady state, non-convergence).
class RuntimeFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class IntegrationError : public RuntimeFailure {
 public:
  IntegrationError(const std::string& what, double time_reached)
      : RuntimeFailure(what), time_reached_(time_reached) {}
  double time_reached() const { return time_reached_; }

 private:
  double time_reached_;
};

class NonUniqueSteadyState : public RuntimeFailure {
 public:
  explicit NonUniqueSteadyState(int null_dimension)
      : RuntimeFailure("non-unique steady state: null-space dimension " +
                       std::to_string(null_dimension)),
        null_dimension_(null_dimension) {}
  int null_dimension() const { return null_dimension_; }

 private:
  int null_dimension_;
};

inline SparseCMatrix to_sparse(const CMatrix& m, double drop = 0.0) {
  return m.sparseView(1.0, drop);
}

inline SparseCMatrix adjoint(const SparseCMatrix& m) {
  return SparseCMatrix(m.adjoint());
}

}  // namespace sivsq
