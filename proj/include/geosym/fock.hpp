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

// Truncated Fock-space helpers: ladder operators, coherent states and the
// truncation rule N >= |beta|^2 + 6|beta| + 20.

#include "geosym/types.hpp"

namespace geosym {

/// Population above which the top Fock level is considered unhealthy.
inline constexpr double kTopPopulationLimit = 1e-8;

int truncation_for(Complex beta);

/// Lowering operator on levels 0..n-1.
MatrixXc lowering(int n);

/// Normalized |beta> truncated to n levels. Throws TruncationError when n is
/// below the truncation rule.
VectorXc coherent_state(Complex beta, int n);

/// Population of the highest retained level.
double top_population(const MatrixXc& rho_osc);

/// <psi|rho|psi> for a normalized psi.
double pure_overlap(const MatrixXc& rho, const VectorXc& psi);

}  // namespace geosym
