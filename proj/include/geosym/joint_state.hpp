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

#pragma once

// Density matrix on (two qubits) (x) (truncated oscillator), 4N x 4N, qubit
// index major: row = 4-level qubit index * N + Fock level.

#include "geosym/qubit_algebra.hpp"
#include "geosym/types.hpp"

namespace geosym {

struct JointTolerance {
  double hermitian = 1e-10;
  double trace = 1e-8;
  double min_eigenvalue = -1e-7;
  double top_population = 1e-8;
};

class JointState {
 public:
  JointState(MatrixXc rho, int fock_dim,
             QubitBasis basis = QubitBasis::kComputational);

  /// rho_q (x) rho_osc in the basis of rho_q.
  static JointState product(const QubitState& qubits, const MatrixXc& osc);
  /// rho_q (x) |beta><beta| with the truncation rule applied unless n > 0.
  static JointState with_coherent(const QubitState& qubits, Complex beta,
                                  int n = 0);

  const MatrixXc& rho() const { return rho_; }
  int fock_dim() const { return fock_dim_; }
  QubitBasis basis() const { return basis_; }

  /// N x N block for qubit indices (i, j).
  auto block(int i, int j) const {
    return rho_.block(i * fock_dim_, j * fock_dim_, fock_dim_, fock_dim_);
  }

  /// Sum over qubit indices of the population of Fock level N-1.
  double top_population() const;

 private:
  MatrixXc rho_;
  int fock_dim_;
  QubitBasis basis_;
};

/// Checks Hermiticity, trace and truncation health; positivity only when
/// check_positivity is set (it costs a 4N eigendecomposition).
void validate(const JointState& state, const JointTolerance& tol = {},
              bool check_positivity = true);

JointState in_basis(const JointState& state, QubitBasis basis);

/// Tr_osc; output is re-Hermitized and keeps the input's basis tag.
QubitState partial_trace_osc(const JointState& state);

/// Tr_qubits.
MatrixXc partial_trace_qubits(const JointState& state);

}  // namespace geosym
