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

#include "sivsq/lindblad.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "sivsq/kernels.hpp"

namespace sivsq {

LindbladModel::LindbladModel(SparseCMatrix h_static) : h_static_(std::move(h_static)) {}

LindbladModel::LindbladModel(SparseCMatrix h_static, std::vector<HarmonicTerm> harmonics,
                             std::vector<Jump> jumps)
    : h_static_(std::move(h_static)),
      harmonics_(std::move(harmonics)),
      jumps_(std::move(jumps)) {}

LindbladModel& LindbladModel::add_jump(SparseCMatrix op, double rate) {
  if (op.rows() != dim() || op.cols() != dim()) throw ValidationError("jump dimension mismatch");
  if (!(rate >= 0.0)) throw ValidationError("jump rate must be non-negative");
  jumps_.push_back({std::move(op), rate});
  return *this;
}

LindbladModel& LindbladModel::add_harmonic(SparseCMatrix op, double frequency) {
  if (op.rows() != dim() || op.cols() != dim()) {
    throw ValidationError("harmonic term dimension mismatch");
  }
  harmonics_.push_back({std::move(op), frequency});
  return *this;
}

SparseCMatrix LindbladModel::hamiltonian_at(double t) const {
  SparseCMatrix h = h_static_;
  for (const auto& term : harmonics_) {
    const Complex phase = std::exp(kI * term.frequency * t);
    h += phase * term.op + std::conj(phase) * adjoint(term.op);
  }
  return h;
}

void LindbladModel::validate(double hermitian_tol) const {
  const int n = dim();
  if (h_static_.rows() != h_static_.cols()) throw ValidationError("Hamiltonian must be square");
  auto check_dim = [n](const SparseCMatrix& m, const char* what) {
    if (m.rows() != n || m.cols() != n) {
      throw ValidationError(std::string(what) + " dimension does not match the Hamiltonian");
    }
  };
  for (const auto& term : harmonics_) check_dim(term.op, "harmonic term");
  for (const auto& jump : jumps_) {
    check_dim(jump.op, "jump operator");
    if (!(jump.rate >= 0.0)) throw ValidationError("jump rates must be non-negative");
  }
  const SparseCMatrix diff = h_static_ - adjoint(h_static_);
  for (int i = 0; i < diff.outerSize(); ++i) {
    for (SparseCMatrix::InnerIterator it(diff, i); it; ++it) {
      if (std::abs(it.value()) > hermitian_tol) {
        throw ValidationError("static Hamiltonian is not Hermitian");
      }
    }
  }
}

DensityMatrix pure_density(const CVector& psi) { return psi * psi.adjoint(); }

DensityDiagnostics check_density_matrix(const DensityMatrix& rho, bool with_spectrum) {
  DensityDiagnostics d{};
  d.trace_error = std::abs(rho.trace() - 1.0);
  d.hermiticity_error = (rho - rho.adjoint()).cwiseAbs().maxCoeff();
  d.min_eigenvalue = std::numeric_limits<double>::quiet_NaN();
  if (with_spectrum) {
    const CMatrix herm = 0.5 * (rho + rho.adjoint());
    Eigen::SelfAdjointEigenSolver<CMatrix> es(herm, Eigen::EigenvaluesOnly);
    d.min_eigenvalue = es.eigenvalues().minCoeff();
  }
  return d;
}

double fidelity(const CVector& psi, const DensityMatrix& rho) {
  return (psi.adjoint() * rho * psi)(0, 0).real();
}

namespace {

CMatrix psd_sqrt(const CMatrix& m) {
  Eigen::SelfAdjointEigenSolver<CMatrix> es(0.5 * (m + m.adjoint()));
  const RVector roots = es.eigenvalues().cwiseMax(0.0).cwiseSqrt();
  return es.eigenvectors() * roots.asDiagonal() * es.eigenvectors().adjoint();
}

}  // namespace

double fidelity(const DensityMatrix& rho, const DensityMatrix& sigma) {
  const CMatrix r = psd_sqrt(rho);
  Eigen::SelfAdjointEigenSolver<CMatrix> es(r * sigma * r, Eigen::EigenvaluesOnly);
  const double root_trace = es.eigenvalues().cwiseMax(0.0).cwiseSqrt().sum();
  return root_trace * root_trace;
}

DensityMatrix liouvillian_rhs(const LindbladModel& model, const DensityMatrix& rho, double t) {
  if (rho.rows() != model.dim() || rho.cols() != model.dim()) {
    throw ValidationError("density matrix dimension does not match the model");
  }
  const LiouvillianKernel kernel(model);
  DensityMatrix out(rho.rows(), rho.cols());
  kernel.apply(t, rho, out);
  return out;
}

CMatrix build_superoperator(const LindbladModel& model, double t) {
  const int n = model.dim();
  const CMatrix h = CMatrix(model.hamiltonian_at(t));
  const CMatrix id = CMatrix::Identity(n, n);
  // vec(A X B) = (B^T (x) A) vec(X)
  auto kron = [](const CMatrix& a, const CMatrix& b) {
    CMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
      for (Eigen::Index j = 0; j < a.cols(); ++j)
        out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return out;
  };
  CMatrix l = -kI * (kron(id, h) - kron(h.transpose(), id));
  for (const auto& jump : model.jumps()) {
    const CMatrix o = CMatrix(jump.op);
    const CMatrix odo = o.adjoint() * o;
    l += jump.rate * (2.0 * kron(o.conjugate(), o) - kron(odo.transpose(), id) - kron(id, odo));
  }
  return l;
}

Eigen::SparseMatrix<Complex> build_sparse_superoperator(const LindbladModel& model, double t) {
  const int n = model.dim();
  using ColSparse = Eigen::SparseMatrix<Complex>;
  const ColSparse h = model.hamiltonian_at(t);
  ColSparse id(n, n);
  id.setIdentity();
  auto kron = [](const ColSparse& a, const ColSparse& b) {
    std::vector<Eigen::Triplet<Complex>> trip;
    trip.reserve(static_cast<size_t>(a.nonZeros()) * b.nonZeros());
    for (int ka = 0; ka < a.outerSize(); ++ka)
      for (ColSparse::InnerIterator ia(a, ka); ia; ++ia)
        for (int kb = 0; kb < b.outerSize(); ++kb)
          for (ColSparse::InnerIterator ib(b, kb); ib; ++ib)
            trip.emplace_back(ia.row() * b.rows() + ib.row(), ia.col() * b.cols() + ib.col(),
                              ia.value() * ib.value());
    ColSparse out(a.rows() * b.rows(), a.cols() * b.cols());
    out.setFromTriplets(trip.begin(), trip.end());
    return out;
  };
  const ColSparse ht = h.transpose();
  ColSparse l = -kI * (kron(id, h) - kron(ht, id));
  for (const auto& jump : model.jumps()) {
    const ColSparse o = jump.op;
    const ColSparse odo = o.adjoint() * o;
    const ColSparse odo_t = odo.transpose();
    const ColSparse oc = o.conjugate();
    l += jump.rate * (2.0 * kron(oc, o) - kron(odo_t, id) - kron(id, odo));
  }
  l.makeCompressed();
  return l;
}

}  // namespace sivsq
