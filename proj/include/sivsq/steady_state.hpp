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

#include <optional>

#include "sivsq/integrator.hpp"

namespace sivsq {

enum class SteadyStrategy {
  kNullSpace,    // smallest right-singular vectors of the dense superoperator
  kLongHorizon,  // integrate until max|drho/dt| < residual_threshold
  kKrylov,       // restarted GMRES on the trace-bordered Liouvillian, matrix-free
  kSparseDirect, // sparse LU of the superoperator with one row set to the trace
  kAuto,         // null space up to dense_limit, sparse LU up to sparse_limit, else Krylov
};

struct SteadyStateOptions {
  SteadyStrategy strategy = SteadyStrategy::kAuto;
  // singular values below null_threshold * sigma_max count as null vectors
  double null_threshold = 1e-10;
  int dense_limit = 1600;  // max superoperator size (dim^2) for the dense path
  long sparse_limit = 40000;  // max dim^2 for the sparse LU path under kAuto
  double residual_threshold = 1e-10;
  // long-horizon
  double horizon_chunk = 10.0;
  double horizon_max = 1e6;
  std::optional<DensityMatrix> initial;  // default: maximally mixed
  // tight enough that the residual floor sits well below residual_threshold
  IntegratorOptions integrator{1e-12, 1e-14};
  // Krylov
  int krylov_restart = 40;
  int krylov_max_iterations = 20000;
  double krylov_tolerance = 1e-13;
};

struct SteadyStateResult {
  DensityMatrix rho;
  SteadyStrategy strategy;   // the strategy actually used
  int null_dimension = -1;   // -1 when the strategy does not measure it
  double residual = 0.0;     // max |L(rho)|
  double horizon = 0.0;      // long-horizon: time integrated
  int iterations = 0;        // Krylov: matrix-vector products
};

// Requires a time-independent model. Throws NonUniqueSteadyState when the
// null-space path finds more than one null vector.
SteadyStateResult steady_state(const LindbladModel& model, const SteadyStateOptions& options = {});

// Number of superoperator singular values below threshold * sigma_max.
int null_space_dimension(const LindbladModel& model, double threshold = 1e-10);

double residual_norm(const LiouvillianKernel& kernel, const DensityMatrix& rho);

}  // namespace sivsq
