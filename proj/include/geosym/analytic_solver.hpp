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

// Closed-form solution of the damped, driven qubit-oscillator master equation
//
//   d rho/dt = -i[(alpha a + alpha* a^dag) Jy, rho] + kappa D[a] rho
//
// in the Jy eigenbasis. Each (l, l') block evolves under a product of
// displacement-type superoperators and the pure-relaxation channel, with
// coefficients
//
//   xi_pm(t) = exp(-+ kappa t/2) int_0^t alpha(t') exp(+- kappa t'/2) dt'
//   A^{ll'}(t) = i kappa l l' int_0^t |xi_+|^2
//                - i int_0^t [l^2 alpha xi_+^* + l'^2 alpha^* xi_+].
//
// xi_pm are evaluated in closed form per segment; the two A integrals by
// adaptive Gauss-Kronrod quadrature.

#include "geosym/joint_state.hpp"
#include "geosym/pulse_schedule.hpp"
#include "geosym/qubit_algebra.hpp"
#include "geosym/types.hpp"

namespace geosym {

struct SolutionCoefficients {
  double t = 0.0;
  double kappa = 0.0;
  Complex xi_plus;
  Complex xi_minus;
  /// A^{ll'} indexed by Jy-basis columns (see jy_basis()).
  Matrix4c A = Matrix4c::Zero();
  /// int_0^t |xi_+|^2 and int_0^t alpha xi_+^*.
  double xi_norm_integral = 0.0;
  Complex drive_overlap_integral;
  /// Largest absolute error estimate reported by the quadrature.
  double quadrature_error = 0.0;
};

/// Relative tolerance of the A-integral quadrature.
inline constexpr double kQuadratureTolerance = 1e-10;

SolutionCoefficients coefficients(const PulseSchedule& schedule, double kappa,
                                  double t);

/// kappa = 0 geometric phase phi of exp(-i phi Jy^2), read off A^{ll'}.
double geometric_phase(const PulseSchedule& schedule);

/// Amplitude damping exp(L_th t) on a truncated oscillator density matrix.
/// Uses the normal-ordered form exp(kt/2 (1 - K0)) exp((1 - e^{-kt}) K-),
/// which equals exp(-K-) exp(kt/2 (1 - K0)) exp(K-) exactly and avoids the
/// exp(|beta|^2) intermediate growth of the three-factor product.
MatrixXc relax_channel(const MatrixXc& rho_osc, double kappa, double t);

/// Literal three-factor product exp(-K-) exp(kt/2 (1 - K0)) exp(K-). Only
/// well conditioned for small occupation; kept as a cross-check.
MatrixXc relax_channel_three_factor(const MatrixXc& rho_osc, double kappa,
                                    double t);

/// Full superoperator Lambda(t) applied blockwise. Output is in the Jy basis.
JointState apply_lambda(const JointState& rho, const PulseSchedule& schedule,
                        double kappa, double t);

struct ReducedPropagationInput {
  QubitState rho0;
  Complex beta;
  PulseSchedule schedule;
  double kappa = 0.0;
};

/// Element-wise multipliers rho^{ll'}(t) / rho^{ll'}(0) for a coherent
/// initial oscillator state.
Matrix4c reduced_factors(const SolutionCoefficients& c, Complex beta);

/// Reduced qubit state at time t; returned in the basis of input.rho0.
QubitState evolve_reduced(const ReducedPropagationInput& input, double t);

/// Convenience: evolve to the end of the schedule.
QubitState evolve_reduced(const ReducedPropagationInput& input);

}  // namespace geosym
