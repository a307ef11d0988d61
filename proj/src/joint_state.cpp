// Copyright 2026 The geosym Authors
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

#include "geosym/joint_state.hpp"

#include <cmath>
#include <string>

#include <Eigen/Eigenvalues>

#include "geosym/errors.hpp"
#include "geosym/fock.hpp"
#include "geosym/text_io.hpp"

namespace geosym {

JointState::JointState(MatrixXc rho, int fock_dim, QubitBasis basis)
    : rho_(std::move(rho)), fock_dim_(fock_dim), basis_(basis) {
  if (fock_dim_ < 1 || rho_.rows() != 4 * fock_dim_ ||
      rho_.cols() != 4 * fock_dim_) {
    throw InvalidParameter("joint state must be 4N x 4N");
  }
}

JointState JointState::product(const QubitState& qubits, const MatrixXc& osc) {
  const int n = static_cast<int>(osc.rows());
  MatrixXc rho(4 * n, 4 * n);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      rho.block(i * n, j * n, n, n) = qubits.rho()(i, j) * osc;
  return JointState(std::move(rho), n, qubits.basis());
}

JointState JointState::with_coherent(const QubitState& qubits, Complex beta,
                                     int n) {
  if (n <= 0) n = truncation_for(beta);
  const VectorXc v = coherent_state(beta, n);
  return product(qubits, v * v.adjoint());
}

double JointState::top_population() const {
  double p = 0.0;
  for (int q = 0; q < 4; ++q) {
    const int k = q * fock_dim_ + fock_dim_ - 1;
    p += std::abs(rho_(k, k));
  }
  return p;
}

void validate(const JointState& state, const JointTolerance& tol,
              bool check_positivity) {
  const MatrixXc& rho = state.rho();
  const double herm = (rho - rho.adjoint()).cwiseAbs().maxCoeff();
  if (!(herm <= tol.hermitian)) {
    throw InvalidState("joint state not Hermitian (deviation " +
                       text::exact(herm) + ")");
  }
  const double trace_err = std::abs(rho.trace() - 1.0);
  if (!(trace_err <= tol.trace)) {
    throw InvalidState("joint state trace off by " + text::exact(trace_err));
  }
  const double top = state.top_population();
  if (!(top <= tol.top_population)) {
    throw TruncationError("top Fock level population " + text::exact(top) +
                          " exceeds " + text::exact(tol.top_population) +
                          " at N = " + std::to_string(state.fock_dim()));
  }
  if (check_positivity) {
    const MatrixXc h = 0.5 * (rho + rho.adjoint());
    const double min_ev =
        Eigen::SelfAdjointEigenSolver<MatrixXc>(h, Eigen::EigenvaluesOnly)
            .eigenvalues()
            .minCoeff();
    if (!(min_ev >= tol.min_eigenvalue)) {
      throw InvalidState("joint state has eigenvalue " + text::exact(min_ev));
    }
  }
}

JointState in_basis(const JointState& state, QubitBasis basis) {
  if (state.basis() == basis) return state;
  const int n = state.fock_dim();
  // (V (x) 1)^dag rho (V (x) 1) blockwise.
  const Matrix4c v = basis == QubitBasis::kJy ? jy_basis().transform
                                              : Matrix4c(jy_basis().transform.adjoint());
  MatrixXc tmp = MatrixXc::Zero(4 * n, 4 * n);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      for (int m = 0; m < 4; ++m)
        if (v(m, j) != Complex{})
          tmp.block(i * n, j * n, n, n) += state.block(i, m) * v(m, j);
  MatrixXc out = MatrixXc::Zero(4 * n, 4 * n);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      for (int m = 0; m < 4; ++m)
        if (v(m, i) != Complex{})
          out.block(i * n, j * n, n, n) +=
              std::conj(v(m, i)) * tmp.block(m * n, j * n, n, n);
  return JointState(std::move(out), n, basis);
}

QubitState partial_trace_osc(const JointState& state) {
  Matrix4c r;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) r(i, j) = state.block(i, j).trace();
  return QubitState(0.5 * (r + r.adjoint()), state.basis());
}

MatrixXc partial_trace_qubits(const JointState& state) {
  const int n = state.fock_dim();
  MatrixXc osc = MatrixXc::Zero(n, n);
  for (int q = 0; q < 4; ++q) osc += state.block(q, q);
  return osc;
}

}  // namespace geosym
