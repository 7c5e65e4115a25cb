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

// Serial reference right-hand side vs the OpenMP kernel on the three model
// families used by the recipes.

#include <benchmark/benchmark.h>

#include "sivsq/dephasing_model.hpp"
#include "sivsq/kernels.hpp"
#include "sivsq/models.hpp"

namespace {

using namespace sivsq;

DensityMatrix random_density(int dim) {
  CMatrix a = CMatrix::Random(dim, dim);
  CMatrix rho = a * a.adjoint();
  return rho / rho.trace();
}

LindbladModel model_for(int which) {
  switch (which) {
    case 0:
      return build_collective_model(100, std::atan(0.2), 1.0).model;
    case 1:
      return build_effective_model(20, std::atan(0.2), 1.0, 1.0, 20.0, 1.0, 6).model;
    default:
      return build_dephasing_model(build_ensemble_ops(8), std::atan(0.2), 1.0, 0.1);
  }
}

const char* kNames[] = {"collective_N100", "effective_N20_n6", "dephasing_N8"};

void BM_Reference(benchmark::State& state) {
  const LindbladModel model = model_for(static_cast<int>(state.range(0)));
  const DensityMatrix rho = random_density(model.dim());
  for (auto _ : state) benchmark::DoNotOptimize(lindblad_rhs_reference(model, rho, 0.0));
  state.SetLabel(kNames[state.range(0)]);
}

void BM_Kernel(benchmark::State& state) {
  const LindbladModel model = model_for(static_cast<int>(state.range(0)));
  const LiouvillianKernel kernel(model);
  const DensityMatrix rho = random_density(model.dim());
  CMatrix out(model.dim(), model.dim());
  for (auto _ : state) {
    kernel.apply(0.0, rho, out);
    benchmark::DoNotOptimize(out.data());
  }
  state.SetLabel(kNames[state.range(0)]);
}

BENCHMARK(BM_Reference)->DenseRange(0, 2)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_Kernel)->DenseRange(0, 2)->Unit(benchmark::kMicrosecond);

}  // namespace

BENCHMARK_MAIN();
