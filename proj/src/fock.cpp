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

#include "geosym/fock.hpp"

#include <cmath>
#include <string>
#include <vector>

#include "geosym/errors.hpp"

namespace geosym {

int truncation_for(Complex beta) {
  const double b = std::abs(beta);
  return static_cast<int>(std::ceil(b * b + 6.0 * b + 20.0));
}

MatrixXc lowering(int n) {
  MatrixXc a = MatrixXc::Zero(n, n);
  for (int m = 1; m < n; ++m) a(m - 1, m) = std::sqrt(static_cast<double>(m));
  return a;
}

VectorXc coherent_state(Complex beta, int n) {
  if (n < truncation_for(beta)) {
    throw TruncationError("Fock truncation " + std::to_string(n) +
                          " below required " +
                          std::to_string(truncation_for(beta)) +
                          " for |beta| = " + std::to_string(std::abs(beta)));
  }
  VectorXc v(n);
  v(0) = std::exp(-0.5 * std::norm(beta));
  for (int m = 1; m < n; ++m) v(m) = v(m - 1) * beta / std::sqrt(double(m));
  const double deficit = 1.0 - v.squaredNorm();
  if (deficit > 1e-10) {
    throw TruncationError("coherent state norm deficit " +
                          std::to_string(deficit));
  }
  return v / v.norm();
}

double top_population(const MatrixXc& rho_osc) {
  const auto n = rho_osc.rows();
  return std::abs(rho_osc(n - 1, n - 1));
}

double pure_overlap(const MatrixXc& rho, const VectorXc& psi) {
  return psi.dot(rho * psi).real();
}

}  // namespace geosym
