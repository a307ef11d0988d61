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


#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include <unsupported/Eigen/MatrixFunctions>

#include "doctest.h"
#include "geosym/errors.hpp"
#include "geosym/qubit_algebra.hpp"

using namespace geosym;

namespace {

Matrix4c random_state(std::mt19937& rng) {
  std::normal_distribution<double> g;
  Matrix4c m;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) m(i, j) = {g(rng), g(rng)};
  Matrix4c rho = m * m.adjoint();
  return rho / rho.trace();
}

Eigen::Vector4d sorted_eigenvalues(const Matrix4c& h) {
  Eigen::Vector4d ev = Eigen::SelfAdjointEigenSolver<Matrix4c>(h).eigenvalues();
  std::sort(ev.data(), ev.data() + 4);
  return ev;
}

double max_abs(const Matrix4c& m) { return m.cwiseAbs().maxCoeff(); }

}  // namespace

TEST_CASE("J_y spectrum") {
  const Matrix4c j = jy_matrix();
  CHECK(max_abs(j - j.adjoint()) == 0.0);
  CHECK(std::abs(j.trace()) == 0.0);
  const auto ev = sorted_eigenvalues(j);
  CHECK(ev(0) == doctest::Approx(-2.0));
  CHECK(std::abs(ev(1)) < 1e-14);
  CHECK(std::abs(ev(2)) < 1e-14);
  CHECK(ev(3) == doctest::Approx(2.0));
  const auto ev2 = sorted_eigenvalues(j * j);
  CHECK(std::abs(ev2(0)) < 1e-14);
  CHECK(std::abs(ev2(1)) < 1e-14);
  CHECK(ev2(2) == doctest::Approx(4.0));
  CHECK(ev2(3) == doctest::Approx(4.0));
}

TEST_CASE("J_y eigenbasis") {
  const JyBasis& b = jy_basis();
  const Matrix4c& v = b.transform;
  CHECK(max_abs(v.adjoint() * v - Matrix4c::Identity()) < 1e-14);
  CHECK(b.eigenvalues == std::array<int, 4>{2, 0, 0, -2});
  const Matrix4c d = v.adjoint() * jy_matrix() * v;
  for (int i = 0; i < 4; ++i)
    for (int k = 0; k < 4; ++k) {
      const double expected = i == k ? b.eigenvalues[i] : 0.0;
      CHECK(std::abs(d(i, k) - expected) < 1e-14);
    }
  // Degenerate pair: symmetric then antisymmetric under qubit exchange.
  auto swap = [](const Vector4c& x) {
    Vector4c y = x;
    std::swap(y(1), y(2));
    return y;
  };
  CHECK((swap(v.col(1)) - v.col(1)).norm() < 1e-15);
  CHECK((swap(v.col(2)) + v.col(2)).norm() < 1e-15);
}

TEST_CASE("basis transforms") {
  std::mt19937 rng(7);
  const QubitState mixed(Matrix4c::Identity() / 4.0);
  CHECK(max_abs(to_jy_basis(mixed).rho() - Matrix4c::Identity() / 4.0) < 1e-15);
  for (int trial = 0; trial < 5; ++trial) {
    const QubitState s(random_state(rng));
    const QubitState j = to_jy_basis(s);
    CHECK(j.basis() == QubitBasis::kJy);
    CHECK(max_abs(from_jy_basis(j).rho() - s.rho()) < 1e-13);
    CHECK(to_jy_basis(j).rho() == j.rho());
  }
  // |00> weights on the (+2, sym 0, antisym 0, -2) vectors.
  const QubitState g = to_jy_basis(QubitState::ground());
  CHECK(g.rho()(0, 0).real() == doctest::Approx(0.25));
  CHECK(g.rho()(1, 1).real() == doctest::Approx(0.5));
  CHECK(std::abs(g.rho()(2, 2)) < 1e-15);
  CHECK(g.rho()(3, 3).real() == doctest::Approx(0.25));
}

TEST_CASE("state validation") {
  CHECK_NOTHROW(validate(QubitState::ground()));
  Matrix4c bad = Matrix4c::Identity() / 4.0;
  bad(0, 1) = 0.1;
  CHECK_THROWS_AS(validate(QubitState(bad)), InvalidState);
  CHECK_THROWS_AS(validate(QubitState(Matrix4c::Identity() / 2.0)), InvalidState);
  Matrix4c neg = Matrix4c::Zero();
  neg(0, 0) = 1.5;
  neg(1, 1) = -0.5;
  CHECK_THROWS_AS(validate(QubitState(neg)), InvalidState);
}

TEST_CASE("ideal gate") {
  const Matrix4c j = jy_matrix();
  for (double phi : {0.0, 0.3, std::numbers::pi / 8, 1.9}) {
    const GateTarget g = ideal_gate(phi);
    const Matrix4c reference = Matrix4c(-kI * phi * (j * j)).exp();
    CHECK(max_abs(g.unitary - reference) < 1e-13);
    CHECK(max_abs(g.unitary * g.unitary.adjoint() - Matrix4c::Identity()) < 1e-14);
    const Matrix4c d = jy_basis().transform.adjoint() * g.unitary *
                       jy_basis().transform;
    for (int i = 0; i < 4; ++i) {
      const double l = jy_basis().eigenvalues[i];
      CHECK(std::abs(d(i, i) - std::exp(-kI * phi * l * l)) < 1e-14);
    }
  }
  CHECK(max_abs(ideal_gate(0.0).unitary - Matrix4c::Identity()) < 1e-15);
  CHECK(max_abs(ideal_gate(std::numbers::pi / 2).unitary - Matrix4c::Identity()) <
        1e-13);
}

TEST_CASE("target state is maximally entangled") {
  const Vector4c psi = gate_target_state(kEntanglingPhase);
  CHECK(psi.norm() == doctest::Approx(1.0));
  CHECK(std::abs(reduced_entropy(psi) - std::log(2.0)) < 1e-10);
  Vector4c product = Vector4c::Zero();
  product(0) = 1.0;
  CHECK(std::abs(reduced_entropy(product)) < 1e-15);
}

TEST_CASE("gate fidelity") {
  const Vector4c psi = gate_target_state();
  CHECK(gate_fidelity(QubitState::pure(psi)) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(gate_fidelity(QubitState(Matrix4c::Identity() / 4.0)) ==
        doctest::Approx(0.25).epsilon(1e-15));
  // Basis tag is honoured.
  CHECK(gate_fidelity(to_jy_basis(QubitState::pure(psi))) ==
        doctest::Approx(1.0).epsilon(1e-14));
  // Bare overlap, not squared.
  const Matrix4c mix = 0.5 * psi * psi.adjoint() + 0.5 * Matrix4c::Identity() / 4.0;
  CHECK(gate_fidelity(QubitState(mix)) == doctest::Approx(0.625));
  std::mt19937 rng(3);
  for (int trial = 0; trial < 20; ++trial) {
    const double f = gate_fidelity(QubitState(random_state(rng)));
    CHECK(f >= 0.0);
    CHECK(f <= 1.0);
  }
  CHECK_THROWS_AS(gate_fidelity(QubitState(Matrix4c::Identity())), InvalidState);
}

TEST_CASE("state csv round trip") {
  std::mt19937 rng(11);
  for (auto basis : {QubitBasis::kComputational, QubitBasis::kJy}) {
    const QubitState s(random_state(rng), basis);
    std::stringstream ss;
    write_state_csv(ss, s);
    const QubitState back = read_state_csv(ss);
    CHECK(back.basis() == basis);
    CHECK(back.rho() == s.rho());
  }
  std::istringstream missing("re,im\n");
  CHECK_THROWS_AS(read_state_csv(missing), InvalidParameter);
  std::istringstream short_file("# basis=jy\nre,im\n1,0\n");
  CHECK_THROWS_AS(read_state_csv(short_file), InvalidParameter);
}
