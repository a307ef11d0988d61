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

#include "geosym/lindblad_oracle.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include <unsupported/Eigen/MatrixFunctions>

#include "geosym/errors.hpp"
#include "geosym/fock.hpp"
#include "geosym/qubit_algebra.hpp"
#include "geosym/text_io.hpp"

namespace geosym {
namespace {

MatrixXc kron(const Matrix4c& q, const MatrixXc& osc) {
  const auto n = osc.rows();
  MatrixXc out = MatrixXc::Zero(4 * n, 4 * n);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      if (q(i, j) != Complex{}) out.block(i * n, j * n, n, n) = q(i, j) * osc;
  return out;
}

double max_abs_alpha(const PulseSchedule& s) {
  double m = 0.0;
  for (const auto& seg : s.segments()) m = std::max(m, std::abs(seg.amplitude()));
  return m;
}

// Structured dense kernels. Every generator is Q (x) B with Q a 4x4 qubit
// matrix and B tridiagonal or diagonal on the Fock space, so each output
// column only reads a handful of nearby input columns.
class Generators {
 public:
  explicit Generators(int n) : n_(n) {
    const Matrix4c jy = jy_matrix();
    for (int i = 0; i < 4; ++i)
      for (int k = 0; k < 4; ++k) {
        if (jy(i, k) != Complex{}) row_terms_[i].push_back({k, jy(i, k)});
        if (jy(k, i) != Complex{}) col_terms_[i].push_back({k, jy(k, i)});
      }
    up_.resize(n);  // up_(m) = sqrt(m + 1), the a-matrix entry (m, m + 1)
    for (int m = 0; m < n; ++m) up_(m) = std::sqrt(static_cast<double>(m + 1));
    number_ = Eigen::ArrayXd::LinSpaced(n, 0.0, n - 1.0);
  }

  int dim() const { return 4 * n_; }

  // out = -i[H, y] + kappa (a y a^dagger - {a^dagger a, y} / 2)
  void master(Complex alpha, double kappa, const MatrixXc& y,
              MatrixXc& out) const {
    apply(alpha, kappa, y, out, true);
  }

  // out = -i H y - (kappa / 2) a^dagger a y
  void nojump(Complex alpha, double kappa, const MatrixXc& y,
              MatrixXc& out) const {
    apply(alpha, kappa, y, out, false);
  }

 private:
  struct Term {
    int block;
    Complex value;
  };

  // out_col += X * v on one Fock block, X = c_lo a + c_hi a^dagger.
  void ladder_left(Complex c_lo, Complex c_hi, const Complex* v,
                   Complex* out) const {
    const int n = n_;
    for (int p = 0; p + 1 < n; ++p) out[p] += c_lo * up_(p) * v[p + 1];
    for (int p = 1; p < n; ++p) out[p] += c_hi * up_(p - 1) * v[p - 1];
  }

  void apply(Complex alpha, double kappa, const MatrixXc& y, MatrixXc& out,
             bool master) const {
    const int n = n_;
    const int d = 4 * n;
    const Complex ca = std::conj(alpha);
    const Complex* src = y.data();
    Complex* dst = out.data();
    for (int j = 0; j < 4; ++j) {
      for (int m = 0; m < n; ++m) {
        const int c = j * n + m;
        const Complex* col = src + static_cast<std::ptrdiff_t>(c) * d;
        Complex* o = dst + static_cast<std::ptrdiff_t>(c) * d;
        std::fill(o, o + d, Complex{});
        // -i H y
        for (int i = 0; i < 4; ++i)
          for (const Term& t : row_terms_[i])
            ladder_left(-kI * t.value * alpha, -kI * t.value * ca,
                        col + t.block * n, o + i * n);
        if (master) {
          // +i y H: column c of y H mixes columns m -/+ 1 of block k.
          for (const Term& t : col_terms_[j]) {
            if (m > 0) {
              const Complex w = kI * t.value * alpha * up_(m - 1);
              const Complex* nb = src + static_cast<std::ptrdiff_t>(t.block * n + m - 1) * d;
              for (int r = 0; r < d; ++r) o[r] += w * nb[r];
            }
            if (m + 1 < n) {
              const Complex w = kI * t.value * ca * up_(m);
              const Complex* nb = src + static_cast<std::ptrdiff_t>(t.block * n + m + 1) * d;
              for (int r = 0; r < d; ++r) o[r] += w * nb[r];
            }
          }
        }
        if (kappa > 0.0) {
          if (master && m + 1 < n) {
            const double w = kappa * up_(m);
            const Complex* nb = src + static_cast<std::ptrdiff_t>(c + 1) * d;
            for (int i = 0; i < 4; ++i)
              for (int p = 0; p + 1 < n; ++p)
                o[i * n + p] += w * up_(p) * nb[i * n + p + 1];
          }
          const double shift = master ? number_(m) : 0.0;
          for (int i = 0; i < 4; ++i)
            for (int p = 0; p < n; ++p)
              o[i * n + p] -= 0.5 * kappa * (number_(p) + shift) * col[i * n + p];
        }
      }
    }
  }

  int n_;
  std::vector<Term> row_terms_[4];
  std::vector<Term> col_terms_[4];
  Eigen::VectorXd up_;
  Eigen::ArrayXd number_;
};

// Steps per segment for the coarsest run; refinement r uses base << r.
std::vector<long> base_steps(const PulseSchedule& s, double dt) {
  std::vector<long> steps;
  for (const auto& seg : s.segments()) {
    steps.push_back(
        std::max<long>(1, static_cast<long>(std::ceil(seg.duration() / dt - 1e-9))));
  }
  return steps;
}

double initial_step(const PulseSchedule& s, const IntegratorConfig& cfg) {
  if (cfg.dt < 0.0 || !std::isfinite(cfg.dt)) {
    throw InvalidParameter("integrator dt must be positive");
  }
  const double cap = s.min_segment_duration() / 10.0;
  double dt = cfg.dt > 0.0 ? cfg.dt : 0.02 / std::max(max_abs_alpha(s), 1e-12);
  return std::min(dt, cap);
}

// rhs(alpha, y, out) writes the generator applied to y into out.
template <class Rhs>
MatrixXc rk4_run(MatrixXc y, const PulseSchedule& s,
                 const std::vector<long>& steps, int refinement, Rhs&& rhs,
                 long* step_count, bool hermitian) {
  const auto segs = s.segments();
  MatrixXc k1(y.rows(), y.cols()), k2(y.rows(), y.cols()),
      k3(y.rows(), y.cols()), k4(y.rows(), y.cols()), stage(y.rows(), y.cols());
  for (std::size_t i = 0; i < segs.size(); ++i) {
    const long n = steps[i] << refinement;
    const double h = segs[i].duration() / static_cast<double>(n);
    const auto& seg = segs[i];
    for (long k = 0; k < n; ++k) {
      const double t = h * static_cast<double>(k);
      const Complex mid = seg.value_at(t + 0.5 * h);
      rhs(seg.value_at(t), y, k1);
      stage.noalias() = y + (0.5 * h) * k1;
      rhs(mid, stage, k2);
      stage.noalias() = y + (0.5 * h) * k2;
      rhs(mid, stage, k3);
      stage.noalias() = y + h * k3;
      rhs(seg.value_at(t + h), stage, k4);
      y += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    }
    if (step_count) *step_count += n;
    if (hermitian) {
      const double dev = (y - y.adjoint()).cwiseAbs().maxCoeff();
      if (dev > 1e-10) {
        throw NumericalConsistencyError(
            "RK4 lost Hermiticity (" + text::exact(dev) + ") in segment " +
            std::to_string(i));
      }
    }
  }
  return y;
}

auto master_rhs(const Generators& g, double kappa) {
  return [&g, kappa](Complex alpha, const MatrixXc& rho, MatrixXc& out) {
    g.master(alpha, kappa, rho, out);
  };
}

auto nojump_rhs(const Generators& g, double kappa) {
  return [&g, kappa](Complex alpha, const MatrixXc& u, MatrixXc& out) {
    g.nojump(alpha, kappa, u, out);
  };
}

void require_kappa(double kappa) {
  if (!(kappa >= 0.0) || !std::isfinite(kappa)) {
    throw InvalidParameter("kappa must be non-negative");
  }
}

template <class Run>
std::pair<MatrixXc, std::pair<double, int>> certify(Run&& run,
                                                    const IntegratorConfig& cfg,
                                                    double dt0) {
  if (!(cfg.tolerance > 0.0)) {
    throw InvalidParameter("integrator tolerance must be positive");
  }
  MatrixXc coarse = run(0);
  double err = 0.0;
  for (int r = 1; r <= cfg.max_refinements; ++r) {
    MatrixXc fine = run(r);
    err = (fine - coarse).cwiseAbs().maxCoeff();
    if (err <= cfg.tolerance) return {std::move(fine), {err, r}};
    coarse = std::move(fine);
  }
  throw ConvergenceError("RK4 did not converge to " +
                             text::exact(cfg.tolerance) + " (last estimate " +
                             text::exact(err) + ", initial dt " +
                             text::exact(dt0) + ")",
                         err);
}

}  // namespace

MatrixXc build_hamiltonian(const PulseSchedule& schedule, double t, int n) {
  const Complex alpha = schedule.alpha(t);
  const MatrixXc a = lowering(n);
  return kron(jy_matrix(), alpha * a + std::conj(alpha) * a.adjoint());
}

Propagation evolve_master(const JointState& rho0, const PulseSchedule& schedule,
                          double kappa, const IntegratorConfig& cfg) {
  require_kappa(kappa);
  const JointState start = in_basis(rho0, QubitBasis::kComputational);
  validate(start);
  const int n = start.fock_dim();
  const Generators g(n);
  const double dt0 = initial_step(schedule, cfg);
  const auto steps = base_steps(schedule, dt0);
  const auto rhs = master_rhs(g, kappa);
  long step_count = 0;
  auto run = [&](int r) {
    return rk4_run(start.rho(), schedule, steps, r, rhs, &step_count, true);
  };
  auto [rho, cert] = certify(run, cfg, dt0);
  JointState out(std::move(rho), n, QubitBasis::kComputational);
  if (out.top_population() > kTopPopulationLimit) {
    throw TruncationError("evolve_master: top Fock population " +
                          text::exact(out.top_population()) + " at N = " +
                          std::to_string(n));
  }
  return {std::move(out), dt0 / static_cast<double>(1 << cert.second),
          cert.first, cert.second, step_count};
}

JointState evolve_master_fixed(const JointState& rho0,
                               const PulseSchedule& schedule, double kappa,
                               double dt) {
  require_kappa(kappa);
  if (!(dt > 0.0)) throw InvalidParameter("dt must be positive");
  const JointState start = in_basis(rho0, QubitBasis::kComputational);
  const Generators g(start.fock_dim());
  const auto steps = base_steps(schedule, dt);
  MatrixXc rho = rk4_run(start.rho(), schedule, steps, 0, master_rhs(g, kappa),
                         nullptr, true);
  return JointState(std::move(rho), start.fock_dim(),
                    QubitBasis::kComputational);
}

PropagatorResult evolve_nojump(const PulseSchedule& schedule, double kappa,
                               int n, const IntegratorConfig& cfg) {
  require_kappa(kappa);
  if (n < 1) throw InvalidParameter("Fock dimension must be positive");
  const Generators g(n);
  const double dt0 = initial_step(schedule, cfg);
  const auto steps = base_steps(schedule, dt0);
  const auto rhs = nojump_rhs(g, kappa);
  const MatrixXc id = MatrixXc::Identity(4 * n, 4 * n);
  auto run = [&](int r) {
    return rk4_run(id, schedule, steps, r, rhs, nullptr, false);
  };
  auto [u, cert] = certify(run, cfg, dt0);
  return {std::move(u), dt0 / static_cast<double>(1 << cert.second),
          cert.first};
}

MatrixXc nojump_propagator(const PulseSchedule& schedule, double kappa, int n) {
  require_kappa(kappa);
  if (n < 1) throw InvalidParameter("Fock dimension must be positive");
  const MatrixXc a = lowering(n);
  const MatrixXc damping =
      kron(Matrix4c::Identity(), MatrixXc(a.adjoint() * a));
  MatrixXc u = MatrixXc::Identity(4 * n, 4 * n);
  for (const auto& seg : schedule.segments()) {
    if (!seg.is_constant()) {
      throw InvalidParameter(
          "nojump_propagator needs piecewise-constant drive; use evolve_nojump");
    }
    const Complex alpha = seg.amplitude();
    const MatrixXc h =
        kron(jy_matrix(), alpha * a + std::conj(alpha) * a.adjoint()) -
        (0.5 * kI * kappa) * damping;
    u = MatrixXc(-kI * seg.duration() * h).exp() * u;
  }
  return u;
}

namespace {

struct FactorOps {
  explicit FactorOps(int n) {
    const MatrixXc a = lowering(n);
    const double r = 1.0 / std::numbers::sqrt2;
    const MatrixXc x = r * (a + a.adjoint());
    const MatrixXc p = (kI * r) * (a.adjoint() - a);
    const Matrix4c jy = jy_matrix();
    x_jy = kron(jy, x);
    p_jy = kron(jy, p);
    number = kron(Matrix4c::Identity(), MatrixXc(a.adjoint() * a));
    jy2 = jy * jy;
    dim = n;
  }
  MatrixXc qubit_exp(Complex c) const {
    return kron(Matrix4c(c * jy2).exp(), MatrixXc::Identity(dim, dim));
  }
  MatrixXc x_jy, p_jy, number;
  Matrix4c jy2;
  int dim;
};

}  // namespace

MatrixXc factorized_circuit(double alpha0, double tau, double kappa, int n,
                            Orientation orientation, bool include_dephasing) {
  const FactorOps ops(n);
  const double s = orientation == Orientation::kForward ? 1.0 : -1.0;
  const double c = std::numbers::sqrt2 * kappa * alpha0 * tau * tau;
  MatrixXc u = ops.qubit_exp(-kI * (2.0 * alpha0 * alpha0 * tau * tau)) *
               MatrixXc(-s * c * ops.x_jy).exp() *
               MatrixXc(s * c * ops.p_jy).exp() *
               MatrixXc(-2.0 * kappa * tau * ops.number).exp();
  if (include_dephasing) {
    u = u * ops.qubit_exp(-5.0 / 3.0 * kappa * alpha0 * alpha0 * tau * tau * tau);
  }
  return u;
}

MatrixXc factorized_double_circuit(double alpha0, double tau, double kappa,
                                   int n, bool include_dephasing) {
  const FactorOps ops(n);
  MatrixXc u = ops.qubit_exp(-kI * (4.0 * alpha0 * alpha0 * tau * tau)) *
               MatrixXc(-4.0 * kappa * tau * ops.number).exp();
  if (include_dephasing) {
    u = u *
        ops.qubit_exp(-10.0 / 3.0 * kappa * alpha0 * alpha0 * tau * tau * tau);
  }
  return u;
}

double factorization_residual(const MatrixXc& exact, const MatrixXc& approx,
                              int n, int low_levels) {
  double diff = 0.0, norm = 0.0;
  for (int q = 0; q < 4; ++q) {
    for (int m = 0; m < std::min(low_levels, n); ++m) {
      const int col = q * n + m;
      diff += (exact.col(col) - approx.col(col)).squaredNorm();
      norm += exact.col(col).squaredNorm();
    }
  }
  return std::sqrt(diff / norm);
}

}  // namespace geosym
