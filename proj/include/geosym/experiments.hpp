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

// Configuration-driven experiments: fidelity sweeps over kappa/alpha0, the
// decoupling order k and the coherent amplitude beta; engine cross-validation;
// phase-space path dumps.
//
// Units: alpha0 = 1, so times are in 1/alpha0 and kappa equals kappa/alpha0.

#include <filesystem>
#include <iosfwd>
#include <limits>
#include <string>
#include <string_view>
#include <vector>

#include "geosym/pulse_schedule.hpp"
#include "geosym/qubit_algebra.hpp"
#include "geosym/types.hpp"

namespace geosym {

enum class Engine { kAnalytic, kOracle, kBoth };

std::string to_string(Engine engine);
Engine parse_engine(std::string_view text);

struct SweepConfig {
  std::vector<double> kappa_ratios;
  std::vector<int> orders{0, 1, 2};
  std::vector<Complex> betas{2.0, 5.0};
  double phase = kEntanglingPhase;
  CircuitKind circuit = CircuitKind::kStep;
  Engine engine = Engine::kAnalytic;
  /// Extra Fock levels on top of the truncation rule (may be negative).
  int fock_margin = 0;
  double integrator_tolerance = 1e-8;
  double cross_tolerance = 1e-4;
  /// Worker threads; 0 uses the hardware concurrency.
  int threads = 0;

  /// Default grid: 21 points on [0, 0.1].
  static SweepConfig defaults();
};

void validate(const SweepConfig& cfg);
/// Keys not present in text keep the values from base.
SweepConfig parse_sweep_config(std::string_view text,
                               const SweepConfig& base = SweepConfig::defaults());
std::string serialize(const SweepConfig& cfg);

enum class RowError {
  kNone,
  kInvalidParameter,
  kTruncation,
  kConvergence,
  kNumerical,
  kInvalidState,
  kOther
};

std::string to_string(RowError error);

struct SweepRow {
  double kappa_ratio = 0.0;
  int order = 0;
  Complex beta;
  double f_analytic = std::numeric_limits<double>::quiet_NaN();
  double f_oracle = std::numeric_limits<double>::quiet_NaN();
  /// |F_analytic - F_oracle| and the max reduced-state element difference;
  /// NaN unless both engines ran.
  double abs_diff = std::numeric_limits<double>::quiet_NaN();
  double max_element_diff = std::numeric_limits<double>::quiet_NaN();
  double wall_time = 0.0;
  RowError error = RowError::kNone;
  std::string message;
};

struct SweepResult {
  SweepConfig config;
  std::vector<SweepRow> rows;  // ordered by (beta, k, kappa)
};

/// Schedule used for one sweep row.
PulseSchedule sweep_schedule(const SweepConfig& cfg, int order);

SweepRow evaluate_point(const SweepConfig& cfg, double kappa_ratio, int order,
                        Complex beta);
SweepResult run_sweep(const SweepConfig& cfg);

/// Columns kappa_ratio,k,beta_re,beta_im,F,engine preceded by '#' lines
/// holding the configuration (all keys but threads). Failed rows carry F = nan and are listed
/// in trailing '# error' lines.
void write_sweep_csv(std::ostream& os, const SweepResult& result);

struct ValidationReport {
  std::vector<SweepRow> rows;
  double max_abs_diff = 0.0;
  double max_element_diff = 0.0;
  bool passed = true;
  std::vector<std::string> breaches;
};

/// Runs both engines on every grid point; fails on any error or any point
/// above cfg.cross_tolerance.
ValidationReport cross_validate(const SweepConfig& cfg);
void write_validation_csv(std::ostream& os, const ValidationReport& report);

struct PathFiles {
  std::filesystem::path forward;
  std::filesystem::path reversed;
};

/// Writes path_<kind>_C.csv and path_<kind>_Cbar.csv into dir.
PathFiles emit_paths(CircuitKind kind, double alpha0, double tau, double kappa,
                     int samples, const std::filesystem::path& dir);

/// t, xi_+, xi_-, and the A^{ll'} entries for (l, l') = (2,0), (2,-2), (0,-2).
void write_coefficient_csv(std::ostream& os, const PulseSchedule& schedule,
                           double kappa, int samples);

}  // namespace geosym
