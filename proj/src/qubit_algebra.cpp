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

#include "geosym/qubit_algebra.hpp"

#include <cmath>
#include <istream>
#include <ostream>
#include <string>

#include <Eigen/Eigenvalues>

#include "geosym/errors.hpp"
#include "geosym/text_io.hpp"

namespace geosym {
namespace {

Eigen::Matrix2cd sigma_y() {
  Eigen::Matrix2cd s;
  s << 0.0, -kI, kI, 0.0;
  return s;
}

JyBasis make_jy_basis() {
  const double r = 1.0 / std::numbers::sqrt2;
  const Eigen::Vector2cd plus{r, kI * r};
  const Eigen::Vector2cd minus{r, -kI * r};
  auto kron = [](const Eigen::Vector2cd& a, const Eigen::Vector2cd& b) {
    Vector4c v;
    v << a(0) * b(0), a(0) * b(1), a(1) * b(0), a(1) * b(1);
    return v;
  };
  JyBasis basis;
  basis.eigenvalues = {2, 0, 0, -2};
  basis.transform.col(0) = kron(plus, plus);
  basis.transform.col(1) = r * (kron(plus, minus) + kron(minus, plus));
  basis.transform.col(2) = r * (kron(plus, minus) - kron(minus, plus));
  basis.transform.col(3) = kron(minus, minus);
  return basis;
}

}  // namespace

QubitState QubitState::pure(const Vector4c& psi, QubitBasis basis) {
  return QubitState(psi * psi.adjoint(), basis);
}

QubitState QubitState::ground() {
  Matrix4c rho = Matrix4c::Zero();
  rho(0, 0) = 1.0;
  return QubitState(rho);
}

void validate(const QubitState& state, const StateTolerance& tol) {
  const Matrix4c& rho = state.rho();
  const double herm = (rho - rho.adjoint()).cwiseAbs().maxCoeff();
  if (!(herm <= tol.hermitian)) {
    throw InvalidState("qubit state not Hermitian (deviation " +
                       text::exact(herm) + ")");
  }
  const double trace_err = std::abs(rho.trace() - 1.0);
  if (!(trace_err <= tol.trace)) {
    throw InvalidState("qubit state trace off by " + text::exact(trace_err));
  }
  const Matrix4c h = 0.5 * (rho + rho.adjoint());
  const double min_ev =
      Eigen::SelfAdjointEigenSolver<Matrix4c>(h, Eigen::EigenvaluesOnly)
          .eigenvalues()
          .minCoeff();
  if (!(min_ev >= tol.min_eigenvalue)) {
    throw InvalidState("qubit state has eigenvalue " + text::exact(min_ev));
  }
}

Matrix4c jy_matrix() {
  const Eigen::Matrix2cd id = Eigen::Matrix2cd::Identity();
  const Eigen::Matrix2cd sy = sigma_y();
  Matrix4c j = Matrix4c::Zero();
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b)
      for (int c = 0; c < 2; ++c)
        for (int d = 0; d < 2; ++d)
          j(2 * a + c, 2 * b + d) = sy(a, b) * id(c, d) + id(a, b) * sy(c, d);
  return j;
}

const JyBasis& jy_basis() {
  static const JyBasis basis = make_jy_basis();
  return basis;
}

QubitState to_jy_basis(const QubitState& state) {
  if (state.basis() == QubitBasis::kJy) return state;
  const Matrix4c& v = jy_basis().transform;
  return QubitState(v.adjoint() * state.rho() * v, QubitBasis::kJy);
}

QubitState from_jy_basis(const QubitState& state) {
  if (state.basis() == QubitBasis::kComputational) return state;
  const Matrix4c& v = jy_basis().transform;
  return QubitState(v * state.rho() * v.adjoint(), QubitBasis::kComputational);
}

QubitState in_basis(const QubitState& state, QubitBasis basis) {
  return basis == QubitBasis::kJy ? to_jy_basis(state) : from_jy_basis(state);
}

GateTarget ideal_gate(double phase) {
  const JyBasis& b = jy_basis();
  Vector4c diag;
  for (int i = 0; i < 4; ++i) {
    const double l = b.eigenvalues[i];
    diag(i) = std::exp(-kI * (phase * l * l));
  }
  return {phase, b.transform * diag.asDiagonal() * b.transform.adjoint()};
}

Vector4c gate_target_state(double phase) {
  return ideal_gate(phase).unitary.col(0);
}

double gate_fidelity(const QubitState& state, double phase,
                     const StateTolerance& tol) {
  validate(state, tol);
  const QubitState comp = from_jy_basis(state);
  const Vector4c psi = gate_target_state(phase);
  const Complex f = psi.dot(comp.rho() * psi);
  if (std::abs(f.imag()) > 1e-12) {
    throw NumericalConsistencyError("fidelity has imaginary part " +
                                    text::exact(f.imag()));
  }
  return f.real();
}

double reduced_entropy(const Vector4c& psi) {
  Eigen::Matrix2cd r = Eigen::Matrix2cd::Zero();
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b)
      for (int c = 0; c < 2; ++c)
        r(a, b) += psi(2 * a + c) * std::conj(psi(2 * b + c));
  const Eigen::Vector2d ev =
      Eigen::SelfAdjointEigenSolver<Eigen::Matrix2cd>(r).eigenvalues();
  double s = 0.0;
  for (double p : ev)
    if (p > 0.0) s -= p * std::log(p);
  return s;
}

void write_state_csv(std::ostream& os, const QubitState& state) {
  os << "# basis="
     << (state.basis() == QubitBasis::kJy ? "jy" : "computational") << '\n'
     << "re,im\n";
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      os << text::exact(state.rho()(i, j).real()) << ','
         << text::exact(state.rho()(i, j).imag()) << '\n';
}

QubitState read_state_csv(std::istream& is) {
  std::string line;
  if (!std::getline(is, line) || line.rfind("# basis=", 0) != 0) {
    throw InvalidParameter("state CSV must start with '# basis=...'");
  }
  const std::string tag = text::trim(line.substr(8));
  QubitBasis basis;
  if (tag == "computational") {
    basis = QubitBasis::kComputational;
  } else if (tag == "jy") {
    basis = QubitBasis::kJy;
  } else {
    throw InvalidParameter("unknown basis tag '" + tag + "'");
  }
  if (!std::getline(is, line) || text::trim(line) != "re,im") {
    throw InvalidParameter("state CSV missing 're,im' header");
  }
  Matrix4c rho;
  for (int k = 0; k < 16; ++k) {
    if (!std::getline(is, line)) {
      throw InvalidParameter("state CSV has fewer than 16 entries");
    }
    const auto cols = text::split_list(line);
    if (cols.size() != 2) throw InvalidParameter("bad state CSV row: " + line);
    rho(k / 4, k % 4) = {text::to_double(cols[0]), text::to_double(cols[1])};
  }
  return QubitState(rho, basis);
}

}  // namespace geosym
