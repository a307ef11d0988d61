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


// Command-line front end: fidelity sweeps, engine cross-validation, phase-space
// path dumps and config inspection.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "geosym/errors.hpp"
#include "geosym/experiments.hpp"
#include "geosym/log.hpp"

namespace fs = std::filesystem;
using namespace geosym;

namespace {

// Exit codes.
constexpr int kOk = 0;
constexpr int kFailure = 1;
constexpr int kBreach = 2;

struct CommonOptions {
  std::string config_path;
  std::string out_dir = ".";
  std::optional<std::string> engine;
  std::optional<int> fock_margin;
  std::optional<int> threads;
};

void add_common(CLI::App* cmd, CommonOptions& o, bool with_engine) {
  cmd->add_option("-c,--config", o.config_path, "Key-value config file")
      ->check(CLI::ExistingFile);
  cmd->add_option("-o,--out", o.out_dir, "Output directory (- for stdout)");
  if (with_engine) {
    cmd->add_option("-e,--engine", o.engine, "analytic, oracle or both")
        ->check(CLI::IsMember({"analytic", "oracle", "both"}));
  }
  cmd->add_option("--fock-margin", o.fock_margin,
                  "Extra Fock levels on top of the truncation rule");
  cmd->add_option("-j,--threads", o.threads, "Worker threads (0 = all cores)")
      ->check(CLI::NonNegativeNumber);
}

SweepConfig load_config(const CommonOptions& o) {
  SweepConfig cfg = SweepConfig::defaults();
  if (!o.config_path.empty()) {
    std::ifstream in(o.config_path);
    std::stringstream text;
    text << in.rdbuf();
    cfg = parse_sweep_config(text.str(), cfg);
  }
  if (o.engine) cfg.engine = parse_engine(*o.engine);
  if (o.fock_margin) cfg.fock_margin = *o.fock_margin;
  if (o.threads) cfg.threads = *o.threads;
  validate(cfg);
  return cfg;
}

// Runs write(os) against stdout or <dir>/<name>.
template <class Write>
void emit(const std::string& dir, const std::string& name, Write write) {
  if (dir == "-") {
    write(std::cout);
    return;
  }
  fs::create_directories(dir);
  const fs::path path = fs::path(dir) / name;
  std::ofstream os(path);
  if (!os) throw std::runtime_error("cannot open " + path.string());
  write(os);
  if (!os) throw std::runtime_error("write failed for " + path.string());
  log::info("wrote " + path.string());
}

int run_sweep_cmd(const CommonOptions& o) {
  const SweepConfig cfg = load_config(o);
  const SweepResult result = run_sweep(cfg);
  emit(o.out_dir, "sweep.csv",
       [&](std::ostream& os) { write_sweep_csv(os, result); });
  int failed = 0;
  for (const auto& row : result.rows) failed += row.error != RowError::kNone;
  if (failed) log::warning(std::to_string(failed) + " sweep points failed");
  return failed ? kFailure : kOk;
}

int run_validate_cmd(const CommonOptions& o) {
  SweepConfig cfg = load_config(o);
  cfg.engine = Engine::kBoth;
  const ValidationReport report = cross_validate(cfg);
  emit(o.out_dir, "validation.csv",
       [&](std::ostream& os) { write_validation_csv(os, report); });
  std::fprintf(stderr, "max |dF| %.3e, max element difference %.3e: %s\n",
               report.max_abs_diff, report.max_element_diff,
               report.passed ? "passed" : "FAILED");
  for (const auto& b : report.breaches) std::fprintf(stderr, "  %s\n", b.c_str());
  return report.passed ? kOk : kBreach;
}

struct PathOptions {
  std::string circuit = "step";
  double alpha0 = 1.0;
  std::optional<double> tau;
  double kappa = 0.0;
  int samples = 401;
  std::string out_dir = ".";
  bool coefficients = false;
};

int run_paths_cmd(const PathOptions& o) {
  const CircuitKind kind = parse_circuit_kind(o.circuit);
  const double tau = o.tau ? *o.tau
                           : SequenceSpec{kind, 0, kEntanglingPhase, o.alpha0}
                                 .pulse_length();
  const double kappa = o.kappa * o.alpha0;
  const PathFiles files = emit_paths(kind, o.alpha0, tau, kappa, o.samples, o.out_dir);
  log::info("wrote " + files.forward.string() + " and " + files.reversed.string());
  if (o.coefficients) {
    const PulseSchedule s = kind == CircuitKind::kStep
                                ? step_circuit(o.alpha0, tau)
                                : circular_circuit(o.alpha0, tau);
    emit(o.out_dir, "coefficients_" + to_string(kind) + ".csv",
         [&](std::ostream& os) {
           write_coefficient_csv(os, s, kappa, o.samples);
         });
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Geometric two-qubit gate under oscillator damping"};
  app.require_subcommand(1);
  app.fallthrough();
  int verbosity = 0;
  bool quiet = false;
  app.add_flag("-v,--verbose", verbosity, "More log output (repeatable)");
  app.add_flag("-q,--quiet", quiet, "Errors only");

  CommonOptions sweep_opts, validate_opts, show_opts;
  auto* sweep = app.add_subcommand("sweep", "Fidelity against kappa/alpha0, k and beta");
  add_common(sweep, sweep_opts, true);
  auto* check = app.add_subcommand(
      "validate", "Run both engines on the grid; exit 2 on any breach");
  add_common(check, validate_opts, false);
  auto* show = app.add_subcommand("show-config", "Print the effective configuration");
  add_common(show, show_opts, true);

  PathOptions path_opts;
  auto* paths = app.add_subcommand("paths", "Phase-space paths of C and C-bar as CSV");
  paths->add_option("--circuit", path_opts.circuit, "step or circular")
      ->check(CLI::IsMember({"step", "circular"}));
  paths->add_option("--alpha0", path_opts.alpha0, "Drive amplitude")
      ->check(CLI::PositiveNumber);
  paths->add_option("--tau", path_opts.tau,
                    "Pulse length (default: gate phase pi/8)")
      ->check(CLI::PositiveNumber);
  paths->add_option("--kappa", path_opts.kappa, "Damping as kappa/alpha0")
      ->check(CLI::NonNegativeNumber);
  paths->add_option("--samples", path_opts.samples, "Points per file")
      ->check(CLI::Range(2, 1000000));
  paths->add_option("-o,--out", path_opts.out_dir, "Output directory");
  paths->add_flag("--coefficients", path_opts.coefficients,
                  "Also dump xi and A along the forward circuit");

  CLI11_PARSE(app, argc, argv);

  log::set_level(quiet            ? log::Level::kWarning
                 : verbosity >= 2 ? log::Level::kDebug
                 : verbosity == 1 ? log::Level::kInfo
                                  : log::Level::kWarning);
  try {
    if (*sweep) return run_sweep_cmd(sweep_opts);
    if (*check) return run_validate_cmd(validate_opts);
    if (*paths) return run_paths_cmd(path_opts);
    if (*show) {
      std::cout << serialize(load_config(show_opts));
      return kOk;
    }
  } catch (const Error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kFailure;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kFailure;
  }
  return kFailure;
}
