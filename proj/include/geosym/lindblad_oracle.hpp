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

// Brute-force reference engine. Integrates the full master equation on the
// computational (x) Fock space with fixed-step RK4; steps never straddle a
// segment boundary. Nothing here uses the Jy block structure, so agreement
// with the analytic solver is a genuine cross-check.

#include "geosym/joint_state.hpp"
#include "geosym/pulse_schedule.hpp"
#include "geosym/types.hpp"

namespace geosym {

struct IntegratorConfig {
  /// Initial step; 0 selects min(segment / 10, 0.02 / max|alpha|).
  double dt = 0.0;
  /// Max-element bound on |rho(dt) - rho(dt/2)| that certifies convergence.
  double tolerance = 1e-8;
  /// Number of dt halvings attempted before giving up.
  int max_refinements = 8;
};

struct Propagation {
  JointState state;
  double dt = 0.0;              // step of the returned (finer) run
  double error_estimate = 0.0;  // max |rho(dt) - rho(2 dt)|
  int refinements = 0;
  long steps = 0;
};

struct PropagatorResult {
  MatrixXc propagator;
  double dt = 0.0;
  double error_estimate = 0.0;
};

/// (alpha(t) a + alpha*(t) a^dag) (x) Jy, dense, computational (x) Fock.
MatrixXc build_hamiltonian(const PulseSchedule& schedule, double t, int n);

/// Certified RK4 propagation of rho0 through the whole schedule.
Propagation evolve_master(const JointState& rho0, const PulseSchedule& schedule,
                          double kappa, const IntegratorConfig& cfg = {});

/// Single uncertified RK4 run with the given initial step (order checks).
JointState evolve_master_fixed(const JointState& rho0,
                               const PulseSchedule& schedule, double kappa,
                               double dt);

/// Propagator of H - (i/2) kappa a^dag a by certified RK4; any schedule.
PropagatorResult evolve_nojump(const PulseSchedule& schedule, double kappa,
                               int n, const IntegratorConfig& cfg = {});

/// Ordered product of exp(-i H_j tau_j) for piecewise-constant schedules.
/// Circular segments are rejected.
MatrixXc nojump_propagator(const PulseSchedule& schedule, double kappa, int n);

/// First-order factorized no-jump propagator of one step circuit:
///   exp(-i 2 a0^2 tau^2 Jy^2) exp(-+ sqrt2 kappa a0 tau^2 x Jy)
///   exp(+- sqrt2 kappa a0 tau^2 p Jy) exp(-2 kappa tau a^dag a),
/// upper signs for C, lower for C-bar. With include_dephasing the
/// first-order factor exp(-(5/3) kappa a0^2 tau^3 Jy^2) is appended.
MatrixXc factorized_circuit(double alpha0, double tau, double kappa, int n,
                            Orientation orientation,
                            bool include_dephasing = false);

/// First-order factorized no-jump propagator of the [C, C-bar] pair with
/// per-circuit pulse length tau:
///   exp(-i 4 a0^2 tau^2 Jy^2) exp(-4 kappa tau a^dag a)
/// (optionally times exp(-(10/3) kappa a0^2 tau^3 Jy^2)).
MatrixXc factorized_double_circuit(double alpha0, double tau, double kappa,
                                   int n, bool include_dephasing = false);

/// ||(exact - approx) P|| / ||exact P||_F with P projecting onto Fock levels
/// below low_levels, away from the truncation edge.
double factorization_residual(const MatrixXc& exact, const MatrixXc& approx,
                              int n, int low_levels);

}  // namespace geosym
