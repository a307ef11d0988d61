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

// Two-qubit operator algebra around the collective operator
// Jy = sigma_y (x) 1 + 1 (x) sigma_y.
//
// Computational ordering is |q1 q2> -> 2*q1 + q2. The Jy eigenbasis used for
// every rho^{ll'} index in the library is, column by column,
//   0: |+y +y>                         l = +2
//   1: (|+y -y> + |-y +y>) / sqrt2     l =  0  (symmetric)
//   2: (|+y -y> - |-y +y>) / sqrt2     l =  0  (antisymmetric)
//   3: |-y -y>                         l = -2
// with sigma_y = [[0, -i], [i, 0]] and |+-y> = (|0> +- i|1>) / sqrt2.

#include <array>
#include <iosfwd>
#include <numbers>

#include "geosym/types.hpp"

namespace geosym {

enum class QubitBasis { kComputational, kJy };

/// Floors for the density-matrix invariants.
struct StateTolerance {
  double hermitian = 1e-12;
  double trace = 1e-12;
  double min_eigenvalue = -1e-10;
};

class QubitState {
 public:
  explicit QubitState(const Matrix4c& rho,
                      QubitBasis basis = QubitBasis::kComputational)
      : rho_(rho), basis_(basis) {}

  static QubitState pure(const Vector4c& psi,
                         QubitBasis basis = QubitBasis::kComputational);
  /// |00><00| in the computational basis.
  static QubitState ground();

  const Matrix4c& rho() const { return rho_; }
  QubitBasis basis() const { return basis_; }

 private:
  Matrix4c rho_;
  QubitBasis basis_;
};

/// Throws InvalidState if any floor is violated.
void validate(const QubitState& state, const StateTolerance& tol = {});

Matrix4c jy_matrix();

struct JyBasis {
  std::array<int, 4> eigenvalues;  // l for each column of transform
  Matrix4c transform;              // columns are Jy eigenvectors
};

const JyBasis& jy_basis();

QubitState to_jy_basis(const QubitState& state);
QubitState from_jy_basis(const QubitState& state);
QubitState in_basis(const QubitState& state, QubitBasis basis);

struct GateTarget {
  double phase;
  Matrix4c unitary;  // exp(-i phase Jy^2), computational basis
};

GateTarget ideal_gate(double phase);

inline constexpr double kEntanglingPhase = std::numbers::pi / 8.0;

/// exp(-i phase Jy^2)|00>; maximally entangled at phase = pi/8.
Vector4c gate_target_state(double phase = kEntanglingPhase);

/// <Psi|rho|Psi> with Psi = gate_target_state(phase). Bare overlap.
double gate_fidelity(const QubitState& state,
                     double phase = kEntanglingPhase,
                     const StateTolerance& tol = {});

/// Von Neumann entropy (natural log) of the first qubit's reduced state.
double reduced_entropy(const Vector4c& psi);

void write_state_csv(std::ostream& os, const QubitState& state);
QubitState read_state_csv(std::istream& is);

}  // namespace geosym
