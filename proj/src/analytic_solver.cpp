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

#include "geosym/analytic_solver.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <unsupported/Eigen/MatrixFunctions>

#include "geosym/errors.hpp"
#include "geosym/fock.hpp"
#include "geosym/log.hpp"
#include "geosym/text_io.hpp"

namespace geosym {
namespace {

// xi_+ at arbitrary t from prefix values at the segment starts.
class XiPlus {
 public:
  XiPlus(const PulseSchedule& s, double kappa) : s_(s), rate_(0.5 * kappa) {
    const auto segs = s.segments();
    at_start_.reserve(segs.size());
    Complex xi{};
    for (std::size_t i = 0; i < segs.size(); ++i) {
      at_start_.push_back(xi);
      xi = advance(i, xi, segs[i].duration());
    }
  }

  Complex operator()(std::size_t i, double local_t) const {
    return advance(i, at_start_[i], local_t);
  }

 private:
  Complex advance(std::size_t i, Complex xi0, double u) const {
    const double t0 = s_.start_time(i);
    return std::exp(-rate_ * u) * xi0 +
           s_.segments()[i].exp_weighted_integral(t0, u, rate_, t0 + u);
  }

  const PulseSchedule& s_;
  double rate_;
  std::vector<Complex> at_start_;
};

template <class F>
auto integrate_segment(F f, double a, double b, double* error) {
  using boost::math::quadrature::gauss_kronrod;
  double err = 0.0, l1 = 0.0;
  auto value = gauss_kronrod<double, 15>::integrate(f, a, b, 12,
                                                    kQuadratureTolerance, &err,
                                                    &l1);
  // The integrals enter as phases, so accuracy is measured against
  // max(|f|_1, 1).
  const double scale = std::max(l1, 1.0);
  if (err > kQuadratureTolerance * scale) {
    throw ConvergenceError("A-integral quadrature reached only " +
                               text::exact(err / scale) + " scaled error",
                           err);
  }
  *error = std::max(*error, err);
  return value;
}

int l_of(int i) { return jy_basis().eigenvalues[i]; }

MatrixXc ladder_exp(const MatrixXc& op, Complex c) {
  if (c == Complex{}) return MatrixXc::Identity(op.rows(), op.cols());
  return MatrixXc(c * op).exp();
}

void require_kappa(double kappa) {
  if (!(kappa >= 0.0) || !std::isfinite(kappa)) {
    throw InvalidParameter("kappa must be non-negative");
  }
}

}  // namespace

SolutionCoefficients coefficients(const PulseSchedule& schedule, double kappa,
                                  double t) {
  require_kappa(kappa);
  if (!(t >= 0.0) || t > schedule.duration() * (1.0 + 1e-12)) {
    throw InvalidParameter("time " + text::exact(t) + " outside schedule");
  }
  t = std::min(t, schedule.duration());

  SolutionCoefficients c;
  c.t = t;
  c.kappa = kappa;
  c.xi_plus = filtered_integral(schedule, 0.5 * kappa, t);
  c.xi_minus = filtered_integral(schedule, -0.5 * kappa, t);

  const XiPlus xi(schedule, kappa);
  const auto segs = schedule.segments();
  double norm_int = 0.0;
  Complex overlap_int{};
  for (std::size_t i = 0; i < segs.size(); ++i) {
    const double t0 = schedule.start_time(i);
    if (t0 >= t) break;
    const double u = std::min(segs[i].duration(), t - t0);
    if (kappa > 0.0) {
      norm_int += integrate_segment(
          [&](double s) { return std::norm(xi(i, s)); }, 0.0, u,
          &c.quadrature_error);
    }
    overlap_int += integrate_segment(
        [&](double s) { return segs[i].value_at(s) * std::conj(xi(i, s)); },
        0.0, u, &c.quadrature_error);
  }
  c.xi_norm_integral = norm_int;
  c.drive_overlap_integral = overlap_int;

  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) {
      const double l = l_of(i), lp = l_of(j);
      c.A(i, j) = kI * kappa * l * lp * norm_int -
                  kI * (l * l * overlap_int + lp * lp * std::conj(overlap_int));
    }
  }
  return c;
}

double geometric_phase(const PulseSchedule& schedule) {
  const auto c = coefficients(schedule, 0.0, schedule.duration());
  // A^{l0} = phi l^2 for a closed loop; column 1 has l' = 0.
  return c.A(0, 1).real() / 4.0;
}

MatrixXc relax_channel(const MatrixXc& rho_osc, double kappa, double t) {
  require_kappa(kappa);
  if (!(t >= 0.0)) throw InvalidParameter("relaxation time must be >= 0");
  const int n = static_cast<int>(rho_osc.rows());
  if (top_population(rho_osc) > kTopPopulationLimit) {
    log::warning("relax_channel: top Fock population " +
                 text::exact(top_population(rho_osc)) + " at N = " +
                 std::to_string(n));
  }
  const double kt = kappa * t;
  if (kt == 0.0) return rho_osc;
  const MatrixXc a = lowering(n);
  // exp(g K-) rho = sum_k g^k a^k rho a^dag^k / k!, finite on the truncation.
  const double g = -std::expm1(-kt);
  MatrixXc acc = rho_osc;
  MatrixXc term = rho_osc;
  for (int k = 1; k < n; ++k) {
    term = (g / k) * (a * term * a.adjoint());
    if (term.cwiseAbs().maxCoeff() == 0.0) break;
    acc += term;
  }
  for (int m = 0; m < n; ++m)
    for (int q = 0; q < n; ++q) acc(m, q) *= std::exp(-0.5 * kt * (m + q));
  return acc;
}

MatrixXc relax_channel_three_factor(const MatrixXc& rho_osc, double kappa,
                                    double t) {
  require_kappa(kappa);
  if (!(t >= 0.0)) throw InvalidParameter("relaxation time must be >= 0");
  const int n = static_cast<int>(rho_osc.rows());
  const MatrixXc a = lowering(n);
  auto exp_k_minus = [&](const MatrixXc& rho, double sign) {
    MatrixXc acc = rho, term = rho;
    for (int k = 1; k < n; ++k) {
      term = (sign / k) * (a * term * a.adjoint());
      if (term.cwiseAbs().maxCoeff() == 0.0) break;
      acc += term;
    }
    return acc;
  };
  MatrixXc r = exp_k_minus(rho_osc, 1.0);
  // (1 - K0) rho = -(n rho + rho n): the right-action ordering of
  // a_R^dag a_R contributes the +1.
  const double s = 0.5 * kappa * t;
  for (int m = 0; m < n; ++m)
    for (int q = 0; q < n; ++q) r(m, q) *= std::exp(-s * (m + q));
  return exp_k_minus(r, -1.0);
}

JointState apply_lambda(const JointState& rho, const PulseSchedule& schedule,
                        double kappa, double t) {
  const JointState in = in_basis(rho, QubitBasis::kJy);
  const int n = in.fock_dim();
  if (in.top_population() > kTopPopulationLimit) {
    throw TruncationError("apply_lambda: top Fock population " +
                          text::exact(in.top_population()) + " at N = " +
                          std::to_string(n));
  }
  const auto c = coefficients(schedule, kappa, t);
  const MatrixXc a = lowering(n);
  const MatrixXc ad = a.adjoint();
  const Complex xp = c.xi_plus, xm = c.xi_minus;

  MatrixXc out(4 * n, 4 * n);
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) {
      const double l = l_of(i), lp = l_of(j), delta = l - lp;
      const MatrixXc sigma = relax_channel(in.block(i, j), kappa, t);
      const MatrixXc left = ladder_exp(ad, -kI * l * std::conj(xp)) *
                            ladder_exp(a, -kI * (lp * xp + delta * xm));
      const MatrixXc right =
          ladder_exp(ad, kI * (l * std::conj(xp) - delta * std::conj(xm))) *
          ladder_exp(a, kI * lp * xp);
      out.block(i * n, j * n, n, n) =
          std::exp(-kI * c.A(i, j)) * (left * sigma * right);
    }
  }
  return JointState(std::move(out), n, QubitBasis::kJy);
}

Matrix4c reduced_factors(const SolutionCoefficients& c, Complex beta) {
  const double decay = std::exp(-0.5 * c.kappa * c.t);
  const double xi2 = std::norm(c.xi_plus);
  const double drive = 2.0 * (beta * c.xi_minus).real() * decay;
  Matrix4c f;
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) {
      const double l = l_of(i), lp = l_of(j);
      f(i, j) = std::exp(-kI * c.A(i, j) + l * lp * xi2 -
                         kI * ((l - lp) * drive));
    }
  }
  return f;
}

QubitState evolve_reduced(const ReducedPropagationInput& input, double t) {
  require_kappa(input.kappa);
  validate(input.rho0);
  const QubitState jy = to_jy_basis(input.rho0);
  const auto c = coefficients(input.schedule, input.kappa, t);
  const Matrix4c out = jy.rho().cwiseProduct(reduced_factors(c, input.beta));
  const double deviation = (out - out.adjoint()).cwiseAbs().maxCoeff();
  if (deviation > 1e-9) {
    throw NumericalConsistencyError("evolve_reduced: Hermiticity deviation " +
                                    text::exact(deviation));
  }
  if (deviation > 1e-13) {
    log::debug("evolve_reduced: re-Hermitized, deviation " +
               text::exact(deviation));
  }
  const QubitState result(0.5 * (out + out.adjoint()), QubitBasis::kJy);
  return in_basis(result, input.rho0.basis());
}

QubitState evolve_reduced(const ReducedPropagationInput& input) {
  return evolve_reduced(input, input.schedule.duration());
}

}  // namespace geosym
