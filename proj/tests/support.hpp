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

// Test-side oracles. Everything here is computed independently of the
// library's closed forms: plain quadrature and brute-force matrix algebra.

#include <cmath>
#include <complex>
#include <functional>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "geosym/pulse_schedule.hpp"
#include "geosym/types.hpp"

namespace geosym::testing {

// int_a^b f with a 61-point Gauss-Kronrod rule, real and imaginary parts
// integrated separately.
inline Complex quad(const std::function<Complex(double)>& f, double a,
                    double b) {
  using boost::math::quadrature::gauss_kronrod;
  if (b <= a) return {};
  auto re = [&](double t) { return f(t).real(); };
  auto im = [&](double t) { return f(t).imag(); };
  const double r = gauss_kronrod<double, 61>::integrate(re, a, b, 10, 1e-13);
  const double i = gauss_kronrod<double, 61>::integrate(im, a, b, 10, 1e-13);
  return {r, i};
}

// int_0^t g(t', alpha(t')) dt', split at segment boundaries so each piece is
// smooth and alpha comes from the owning segment.
inline Complex quad_schedule(const PulseSchedule& s,
                             const std::function<Complex(double, Complex)>& g,
                             double t) {
  Complex acc{};
  for (std::size_t i = 0; i < s.segments().size(); ++i) {
    const double a = s.start_time(i);
    const double b = std::min(s.end_time(i), t);
    if (b <= a) break;
    const auto& seg = s.segments()[i];
    acc += quad([&](double u) { return g(u, seg.value_at(u - a)); }, a, b);
  }
  return acc;
}

}  // namespace geosym::testing
