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

#include "sivsq/steady_state.hpp"

#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include <Eigen/SparseLU>

namespace sivsq {

namespace {

DensityMatrix hermitize_normalize(DensityMatrix rho) {
  rho = 0.5 * (rho + rho.adjoint()).eval();
  const Complex tr = rho.trace();
  if (std::abs(tr) < 1e-300) throw RuntimeFailure("steady state has vanishing trace");
  return rho / tr.real();
}

Eigen::BDCSVD<CMatrix> superoperator_svd(const LindbladModel& model) {
  const CMatrix l = build_superoperator(model);
  return Eigen::BDCSVD<CMatrix>(l, Eigen::ComputeFullV);
}

int count_null(const RVector& sv, double threshold) {
  const double cut = threshold * sv(0);
  int count = 0;
  for (Eigen::Index i = 0; i < sv.size(); ++i) count += sv(i) < cut ? 1 : 0;
  return count;
}

SteadyStateResult null_space_path(const LindbladModel& model, const SteadyStateOptions& o) {
  const int n = model.dim();
  const auto svd = superoperator_svd(model);
  const RVector& sv = svd.singularValues();
  const int count = count_null(sv, o.null_threshold);
  if (count > 1) throw NonUniqueSteadyState(count);
  const CVector v = svd.matrixV().col(sv.size() - 1);
  DensityMatrix rho = Eigen::Map<const CMatrix>(v.data(), n, n);
  SteadyStateResult r;
  r.rho = hermitize_normalize(std::move(rho));
  r.strategy = SteadyStrategy::kNullSpace;
  r.null_dimension = count;
  r.residual = residual_norm(LiouvillianKernel(model), r.rho);
  return r;
}

std::string sci(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", v);
  return buf;
}

DensityMatrix maximally_mixed(int n) { return CMatrix::Identity(n, n) / double(n); }

SteadyStateResult long_horizon_path(const LindbladModel& model, const SteadyStateOptions& o) {
  const LiouvillianKernel kernel(model);
  DensityMatrix rho = o.initial ? *o.initial : maximally_mixed(model.dim());
  double t = 0.0;
  double chunk = o.horizon_chunk;
  double residual = residual_norm(kernel, rho);
  double best = residual;
  int stalled = 0;
  while (residual >= o.residual_threshold) {
    if (t >= o.horizon_max || stalled >= 8) {
      throw RuntimeFailure("long-horizon steady state stalled or did not converge by t = " +
                           std::to_string(t) + " (residual " + sci(residual) + ")");
    }
    const double t_next = std::min(t + chunk, o.horizon_max);
    integrate(kernel, rho, t, {t_next}, o.integrator, [](double, DensityMatrix&) {});
    t = t_next;
    residual = residual_norm(kernel, rho);
    chunk *= 1.5;
    if (residual < 0.9 * best) {
      best = residual;
      stalled = 0;
    } else {
      ++stalled;
    }
  }
  SteadyStateResult r;
  r.rho = hermitize_normalize(std::move(rho));
  r.strategy = SteadyStrategy::kLongHorizon;
  r.residual = residual_norm(kernel, r.rho);
  r.horizon = t;
  return r;
}

// Restarted GMRES over the real vector space of Hermitian matrices with
// inner product Re tr(A^dag B). Solves L(x) + tr(x) I/n = I/n, whose unique
// solution is the steady state whenever the null space of L is
// one-dimensional (the range of L is traceless).
SteadyStateResult krylov_path(const LindbladModel& model, const SteadyStateOptions& o) {
  const int n = model.dim();
  const LiouvillianKernel kernel(model);
  const CMatrix sigma = maximally_mixed(n);
  CMatrix tmp(n, n);
  auto apply = [&](const CMatrix& x, CMatrix& out) {
    kernel.apply(0.0, x, out);
    out += x.trace().real() * sigma;
  };
  auto dot = [](const CMatrix& a, const CMatrix& b) {
    return (a.array().conjugate() * b.array()).sum().real();
  };

  CMatrix x = o.initial ? *o.initial : sigma;
  const double b_norm = sigma.norm();
  const int m = o.krylov_restart;
  std::vector<CMatrix> basis(m + 1, CMatrix(n, n));
  RMatrix hess = RMatrix::Zero(m + 1, m);
  RVector cs(m), sn(m), g(m + 1);
  int iterations = 0;
  double rel = 1.0;

  while (iterations < o.krylov_max_iterations) {
    apply(x, tmp);
    CMatrix r = sigma - tmp;
    double beta = r.norm();
    rel = beta / b_norm;
    if (rel < o.krylov_tolerance) break;
    basis[0] = r / beta;
    g.setZero();
    g(0) = beta;
    hess.setZero();
    int k = 0;
    for (; k < m && iterations < o.krylov_max_iterations; ++k) {
      apply(basis[k], basis[k + 1]);
      ++iterations;
      for (int i = 0; i <= k; ++i) {  // modified Gram-Schmidt
        hess(i, k) = dot(basis[i], basis[k + 1]);
        basis[k + 1] -= hess(i, k) * basis[i];
      }
      hess(k + 1, k) = basis[k + 1].norm();
      if (hess(k + 1, k) > 0.0) basis[k + 1] /= hess(k + 1, k);
      for (int i = 0; i < k; ++i) {
        const double t = cs(i) * hess(i, k) + sn(i) * hess(i + 1, k);
        hess(i + 1, k) = -sn(i) * hess(i, k) + cs(i) * hess(i + 1, k);
        hess(i, k) = t;
      }
      const double denom = std::hypot(hess(k, k), hess(k + 1, k));
      cs(k) = hess(k, k) / denom;
      sn(k) = hess(k + 1, k) / denom;
      hess(k, k) = denom;
      hess(k + 1, k) = 0.0;
      g(k + 1) = -sn(k) * g(k);
      g(k) = cs(k) * g(k);
      rel = std::abs(g(k + 1)) / b_norm;
      if (rel < o.krylov_tolerance) {
        ++k;
        break;
      }
    }
    const RVector y = hess.topLeftCorner(k, k).triangularView<Eigen::Upper>().solve(g.head(k));
    for (int i = 0; i < k; ++i) x += y(i) * basis[i];
    if (rel < o.krylov_tolerance) break;
  }
  if (rel >= o.krylov_tolerance * 1e3) {
    throw RuntimeFailure("Krylov steady state did not converge (relative residual " +
                         sci(rel) + ")");
  }
  SteadyStateResult res;
  res.rho = hermitize_normalize(std::move(x));
  res.strategy = SteadyStrategy::kKrylov;
  res.residual = residual_norm(kernel, res.rho);
  res.iterations = iterations;
  return res;
}

// The diagonal equations of L(rho) = 0 sum to zero, so the (0,0) row is
// replaced by tr(rho) = 1.
SteadyStateResult sparse_direct_path(const LindbladModel& model) {
  const int n = model.dim();
  Eigen::SparseMatrix<Complex> l = build_sparse_superoperator(model);
  Eigen::SparseMatrix<Complex, Eigen::RowMajor> rows = l;
  rows.row(0) *= 0.0;
  for (int k = 0; k < n; ++k) rows.coeffRef(0, static_cast<Eigen::Index>(k) * n + k) = 1.0;
  rows.prune(Complex(0.0));
  Eigen::SparseMatrix<Complex> a = rows;
  a.makeCompressed();
  Eigen::SparseLU<Eigen::SparseMatrix<Complex>, Eigen::COLAMDOrdering<int>> lu;
  lu.compute(a);
  if (lu.info() != Eigen::Success) {
    throw RuntimeFailure(
        "sparse LU of the superoperator failed (singular: steady state not unique?)");
  }
  CVector b = CVector::Zero(static_cast<Eigen::Index>(n) * n);
  b(0) = 1.0;
  const CVector v = lu.solve(b);
  if (lu.info() != Eigen::Success || !v.allFinite()) {
    throw RuntimeFailure("sparse LU solve of the superoperator failed");
  }
  SteadyStateResult r;
  r.rho = hermitize_normalize(Eigen::Map<const CMatrix>(v.data(), n, n));
  r.strategy = SteadyStrategy::kSparseDirect;
  r.residual = residual_norm(LiouvillianKernel(model), r.rho);
  return r;
}

}  // namespace

double residual_norm(const LiouvillianKernel& kernel, const DensityMatrix& rho) {
  CMatrix out(rho.rows(), rho.cols());
  kernel.apply(0.0, rho, out);
  return out.cwiseAbs().maxCoeff();
}

int null_space_dimension(const LindbladModel& model, double threshold) {
  Eigen::BDCSVD<CMatrix> svd(build_superoperator(model));
  return count_null(svd.singularValues(), threshold);
}

SteadyStateResult steady_state(const LindbladModel& model, const SteadyStateOptions& options) {
  model.validate(1e-10);
  if (model.time_dependent()) {
    throw ValidationError("steady_state requires a time-independent model");
  }
  const long liouville = static_cast<long>(model.dim()) * model.dim();
  switch (options.strategy) {
    case SteadyStrategy::kNullSpace:
      return null_space_path(model, options);
    case SteadyStrategy::kLongHorizon:
      return long_horizon_path(model, options);
    case SteadyStrategy::kKrylov:
      return krylov_path(model, options);
    case SteadyStrategy::kSparseDirect:
      return sparse_direct_path(model);
    case SteadyStrategy::kAuto:
      if (liouville <= options.dense_limit) return null_space_path(model, options);
      if (liouville <= options.sparse_limit) return sparse_direct_path(model);
      return krylov_path(model, options);
  }
  throw ValidationError("unknown steady-state strategy");
}

}  // namespace sivsq
