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

#include "geosym/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>
#include <thread>

#include "geosym/analytic_solver.hpp"
#include "geosym/errors.hpp"
#include "geosym/fock.hpp"
#include "geosym/joint_state.hpp"
#include "geosym/lindblad_oracle.hpp"
#include "geosym/log.hpp"
#include "geosym/text_io.hpp"

namespace geosym {
namespace {

// Floors for reduced states coming out of the RK4 engine; they inherit the
// joint-state tolerances.
constexpr StateTolerance kOracleStateTolerance{1e-10, 1e-8, -1e-7};

template <class F>
void record_errors(SweepRow& row, const char* engine, F&& body) {
  auto fail = [&](RowError code, const std::exception& e) {
    if (row.error == RowError::kNone) row.error = code;
    if (!row.message.empty()) row.message += "; ";
    row.message += std::string(engine) + ": " + e.what();
  };
  try {
    body();
  } catch (const InvalidParameter& e) {
    fail(RowError::kInvalidParameter, e);
  } catch (const TruncationError& e) {
    fail(RowError::kTruncation, e);
  } catch (const ConvergenceError& e) {
    fail(RowError::kConvergence, e);
  } catch (const NumericalConsistencyError& e) {
    fail(RowError::kNumerical, e);
  } catch (const InvalidState& e) {
    fail(RowError::kInvalidState, e);
  } catch (const std::exception& e) {
    fail(RowError::kOther, e);
  }
}

template <class T, class Parse>
std::vector<T> parse_list(std::string_view text, Parse parse) {
  std::vector<T> out;
  for (const auto& item : text::split_list(text)) out.push_back(parse(item));
  return out;
}

template <class T, class Format>
std::string join(const std::vector<T>& values, Format format) {
  std::string out;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) out += ", ";
    out += format(values[i]);
  }
  return out;
}

}  // namespace

std::string to_string(Engine engine) {
  switch (engine) {
    case Engine::kAnalytic: return "analytic";
    case Engine::kOracle: return "oracle";
    case Engine::kBoth: return "both";
  }
  return "?";
}

Engine parse_engine(std::string_view text) {
  if (text == "analytic") return Engine::kAnalytic;
  if (text == "oracle") return Engine::kOracle;
  if (text == "both") return Engine::kBoth;
  throw InvalidParameter("unknown engine '" + std::string(text) + "'");
}

std::string to_string(RowError error) {
  switch (error) {
    case RowError::kNone: return "ok";
    case RowError::kInvalidParameter: return "invalid-parameter";
    case RowError::kTruncation: return "truncation";
    case RowError::kConvergence: return "convergence";
    case RowError::kNumerical: return "numerical";
    case RowError::kInvalidState: return "invalid-state";
    case RowError::kOther: return "other";
  }
  return "?";
}

SweepConfig SweepConfig::defaults() {
  SweepConfig cfg;
  for (int i = 0; i <= 20; ++i) cfg.kappa_ratios.push_back(i / 200.0);
  return cfg;
}

void validate(const SweepConfig& cfg) {
  if (cfg.kappa_ratios.empty() || cfg.orders.empty() || cfg.betas.empty()) {
    throw InvalidParameter("sweep grid is empty");
  }
  for (double k : cfg.kappa_ratios) {
    if (!(k >= 0.0) || !std::isfinite(k)) {
      throw InvalidParameter("kappa ratios must be non-negative");
    }
  }
  for (int k : cfg.orders) {
    if (k < 0 || k > 12) throw InvalidParameter("orders must be in [0, 12]");
  }
  if (!(cfg.phase > 0.0)) throw InvalidParameter("phi must be positive");
  if (!(cfg.integrator_tolerance > 0.0) || !(cfg.cross_tolerance > 0.0)) {
    throw InvalidParameter("tolerances must be positive");
  }
  if (cfg.threads < 0) throw InvalidParameter("threads must be >= 0");
}

SweepConfig parse_sweep_config(std::string_view text, const SweepConfig& base) {
  SweepConfig cfg = base;
  double kappa_max = -1.0;
  int kappa_points = 0;
  for (const auto& kv : text::parse_key_values(text)) {
    const std::string& v = kv.value;
    if (kv.key == "kappa_ratios") {
      cfg.kappa_ratios = parse_list<double>(v, text::to_double);
    } else if (kv.key == "kappa_max") {
      kappa_max = text::to_double(v);
    } else if (kv.key == "kappa_points") {
      kappa_points = text::to_int(v);
    } else if (kv.key == "orders") {
      cfg.orders = parse_list<int>(v, text::to_int);
    } else if (kv.key == "betas") {
      cfg.betas = parse_list<Complex>(v, text::to_complex);
    } else if (kv.key == "phi") {
      cfg.phase = text::to_double(v);
    } else if (kv.key == "circuit") {
      cfg.circuit = parse_circuit_kind(v);
    } else if (kv.key == "engine") {
      cfg.engine = parse_engine(v);
    } else if (kv.key == "fock_margin") {
      cfg.fock_margin = text::to_int(v);
    } else if (kv.key == "tolerance") {
      cfg.integrator_tolerance = text::to_double(v);
    } else if (kv.key == "cross_tolerance") {
      cfg.cross_tolerance = text::to_double(v);
    } else if (kv.key == "threads") {
      cfg.threads = text::to_int(v);
    } else {
      throw InvalidParameter("line " + std::to_string(kv.line) +
                             ": unknown key '" + kv.key + "'");
    }
  }
  if (kappa_max >= 0.0 || kappa_points > 0) {
    if (kappa_max < 0.0 || kappa_points < 2) {
      throw InvalidParameter("kappa_max needs kappa_points >= 2 and vice versa");
    }
    cfg.kappa_ratios.clear();
    for (int i = 0; i < kappa_points; ++i) {
      cfg.kappa_ratios.push_back(kappa_max * i / (kappa_points - 1));
    }
  }
  validate(cfg);
  return cfg;
}

std::string serialize(const SweepConfig& cfg) {
  auto d = [](double x) { return text::exact(x); };
  std::ostringstream os;
  os << "kappa_ratios = " << join(cfg.kappa_ratios, d) << '\n'
     << "orders = " << join(cfg.orders, [](int k) { return std::to_string(k); })
     << '\n'
     << "betas = "
     << join(cfg.betas, [](Complex b) { return text::exact(b); }) << '\n'
     << "phi = " << d(cfg.phase) << '\n'
     << "circuit = " << to_string(cfg.circuit) << '\n'
     << "engine = " << to_string(cfg.engine) << '\n'
     << "fock_margin = " << cfg.fock_margin << '\n'
     << "tolerance = " << d(cfg.integrator_tolerance) << '\n'
     << "cross_tolerance = " << d(cfg.cross_tolerance) << '\n'
     << "threads = " << cfg.threads << '\n';
  return os.str();
}

PulseSchedule sweep_schedule(const SweepConfig& cfg, int order) {
  return symmetrized_sequence({cfg.circuit, order, cfg.phase, 1.0});
}

SweepRow evaluate_point(const SweepConfig& cfg, double kappa_ratio, int order,
                        Complex beta) {
  const auto start = std::chrono::steady_clock::now();
  SweepRow row;
  row.kappa_ratio = kappa_ratio;
  row.order = order;
  row.beta = beta;

  std::optional<QubitState> analytic_state, oracle_state;
  std::optional<PulseSchedule> schedule;
  record_errors(row, "schedule",
                [&] { schedule.emplace(sweep_schedule(cfg, order)); });
  if (schedule && cfg.engine != Engine::kOracle) {
    record_errors(row, "analytic", [&] {
      ReducedPropagationInput input{QubitState::ground(), beta, *schedule,
                                    kappa_ratio};
      analytic_state.emplace(evolve_reduced(input));
      row.f_analytic = gate_fidelity(*analytic_state, cfg.phase);
    });
  }
  if (schedule && cfg.engine != Engine::kAnalytic) {
    record_errors(row, "oracle", [&] {
      const int n = truncation_for(beta) + cfg.fock_margin;
      if (n < 2) throw TruncationError("Fock truncation below 2 levels");
      const JointState rho0 =
          JointState::with_coherent(QubitState::ground(), beta, n);
      IntegratorConfig icfg;
      icfg.tolerance = cfg.integrator_tolerance;
      const Propagation prop = evolve_master(rho0, *schedule, kappa_ratio, icfg);
      validate(prop.state, JointTolerance{}, false);
      oracle_state.emplace(partial_trace_osc(prop.state));
      row.f_oracle =
          gate_fidelity(*oracle_state, cfg.phase, kOracleStateTolerance);
    });
  }
  if (analytic_state && oracle_state) {
    row.abs_diff = std::abs(row.f_analytic - row.f_oracle);
    row.max_element_diff = (from_jy_basis(*analytic_state).rho() -
                            from_jy_basis(*oracle_state).rho())
                               .cwiseAbs()
                               .maxCoeff();
  }
  row.wall_time = std::chrono::duration<double>(
                      std::chrono::steady_clock::now() - start)
                      .count();
  return row;
}

SweepResult run_sweep(const SweepConfig& cfg) {
  validate(cfg);
  struct Job {
    double kappa;
    int order;
    Complex beta;
  };
  std::vector<Job> jobs;
  for (Complex b : cfg.betas)
    for (int k : cfg.orders)
      for (double kr : cfg.kappa_ratios) jobs.push_back({kr, k, b});

  SweepResult result{cfg, std::vector<SweepRow>(jobs.size())};
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < jobs.size(); i = next++) {
      result.rows[i] =
          evaluate_point(cfg, jobs[i].kappa, jobs[i].order, jobs[i].beta);
      if (result.rows[i].error != RowError::kNone) {
        log::warning("sweep point failed: " + result.rows[i].message);
      }
    }
  };
  unsigned threads = cfg.threads > 0 ? static_cast<unsigned>(cfg.threads)
                                     : std::thread::hardware_concurrency();
  threads = std::clamp<unsigned>(threads, 1u,
                                 static_cast<unsigned>(std::max<std::size_t>(
                                     jobs.size(), 1)));
  std::vector<std::jthread> pool;
  for (unsigned t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  pool.clear();
  return result;
}

void write_sweep_csv(std::ostream& os, const SweepResult& result) {
  std::istringstream cfg(serialize(result.config));
  for (std::string line; std::getline(cfg, line);) {
    // The thread count never changes the rows, so it stays out of the file.
    if (line.rfind("threads", 0) != 0) os << "# " << line << '\n';
  }
  os << "kappa_ratio,k,beta_re,beta_im,F,engine\n";
  auto emit = [&](const SweepRow& r, double f, const char* engine) {
    os << text::fixed(r.kappa_ratio) << ',' << r.order << ','
       << text::fixed(r.beta.real()) << ',' << text::fixed(r.beta.imag())
       << ',' << (std::isnan(f) ? std::string("nan") : text::fixed(f)) << ','
       << engine << '\n';
  };
  for (const auto& r : result.rows) {
    if (result.config.engine != Engine::kOracle) emit(r, r.f_analytic, "analytic");
    if (result.config.engine != Engine::kAnalytic) emit(r, r.f_oracle, "oracle");
  }
  for (const auto& r : result.rows) {
    if (r.error == RowError::kNone) continue;
    os << "# error kappa_ratio=" << text::fixed(r.kappa_ratio)
       << " k=" << r.order << " beta=" << text::exact(r.beta) << " code="
       << to_string(r.error) << ": " << r.message << '\n';
  }
}

ValidationReport cross_validate(const SweepConfig& cfg) {
  SweepConfig both = cfg;
  both.engine = Engine::kBoth;
  SweepResult sweep = run_sweep(both);
  ValidationReport report;
  for (const auto& r : sweep.rows) {
    std::ostringstream where;
    where << "kappa_ratio=" << text::exact(r.kappa_ratio) << " k=" << r.order
          << " beta=" << text::exact(r.beta);
    if (r.error != RowError::kNone) {
      report.breaches.push_back(where.str() + " " + to_string(r.error) + ": " +
                                r.message);
      continue;
    }
    report.max_abs_diff = std::max(report.max_abs_diff, r.abs_diff);
    report.max_element_diff =
        std::max(report.max_element_diff, r.max_element_diff);
    if (r.abs_diff > cfg.cross_tolerance ||
        r.max_element_diff > cfg.cross_tolerance) {
      report.breaches.push_back(where.str() + " |dF|=" +
                                text::exact(r.abs_diff) + " max|drho|=" +
                                text::exact(r.max_element_diff));
    }
  }
  report.passed = report.breaches.empty();
  report.rows = std::move(sweep.rows);
  return report;
}

void write_validation_csv(std::ostream& os, const ValidationReport& report) {
  os << "kappa_ratio,k,beta_re,beta_im,F_analytic,F_oracle,abs_dF,max_elem_diff,"
        "status\n";
  auto num = [](double v) {
    return std::isnan(v) ? std::string("nan") : text::fixed(v);
  };
  for (const auto& r : report.rows) {
    os << num(r.kappa_ratio) << ',' << r.order << ',' << num(r.beta.real())
       << ',' << num(r.beta.imag()) << ',' << num(r.f_analytic) << ','
       << num(r.f_oracle) << ',' << num(r.abs_diff) << ','
       << num(r.max_element_diff) << ',' << to_string(r.error) << '\n';
  }
}

PathFiles emit_paths(CircuitKind kind, double alpha0, double tau, double kappa,
                     int samples, const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  PathFiles files{dir / ("path_" + to_string(kind) + "_C.csv"),
                  dir / ("path_" + to_string(kind) + "_Cbar.csv")};
  for (Orientation o : {Orientation::kForward, Orientation::kReversed}) {
    const PulseSchedule s = kind == CircuitKind::kStep
                                ? step_circuit(alpha0, tau, o)
                                : circular_circuit(alpha0, tau, o);
    const auto path = phase_space_path(s, kappa, samples);
    const auto& file = o == Orientation::kForward ? files.forward : files.reversed;
    std::ofstream out(file);
    if (!out) throw Error("cannot write " + file.string());
    write_path_csv(out, path);
    if (!out) throw Error("write failed for " + file.string());
  }
  return files;
}

void write_coefficient_csv(std::ostream& os, const PulseSchedule& schedule,
                           double kappa, int samples) {
  if (samples < 2) throw InvalidParameter("need at least two samples");
  os << "t,xi_plus_re,xi_plus_im,xi_minus_re,xi_minus_im,"
        "A_2_0_re,A_2_0_im,A_2_m2_re,A_2_m2_im,A_0_m2_re,A_0_m2_im\n";
  const double total = schedule.duration();
  for (int i = 0; i < samples; ++i) {
    const double t = i + 1 == samples ? total : total * i / (samples - 1);
    const auto c = coefficients(schedule, kappa, t);
    // Jy-basis columns: 0 -> l=2, 1 -> l=0 (sym), 3 -> l=-2.
    os << text::fixed(t) << ',' << text::fixed(c.xi_plus.real()) << ','
       << text::fixed(c.xi_plus.imag()) << ',' << text::fixed(c.xi_minus.real())
       << ',' << text::fixed(c.xi_minus.imag()) << ','
       << text::fixed(c.A(0, 1).real()) << ',' << text::fixed(c.A(0, 1).imag())
       << ',' << text::fixed(c.A(0, 3).real()) << ','
       << text::fixed(c.A(0, 3).imag()) << ',' << text::fixed(c.A(1, 3).real())
       << ',' << text::fixed(c.A(1, 3).imag()) << '\n';
  }
}

}  // namespace geosym
