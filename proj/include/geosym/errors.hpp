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

#include <stdexcept>
#include <string>

namespace geosym {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A parameter is outside its documented domain (non-positive amplitude,
/// time outside the schedule, negative rate, ...).
class InvalidParameter : public Error {
 public:
  using Error::Error;
};

/// A density matrix violates the Hermiticity / trace / positivity floors.
class InvalidState : public Error {
 public:
  using Error::Error;
};

/// The Fock truncation is too small for the requested state or the
/// population of the top level exceeded the health threshold.
class TruncationError : public Error {
 public:
  using Error::Error;
};

/// Step-halving certificate or adaptive quadrature did not reach the
/// requested tolerance.
class ConvergenceError : public Error {
 public:
  ConvergenceError(const std::string& what, double achieved)
      : Error(what), achieved_(achieved) {}
  double achieved() const { return achieved_; }

 private:
  double achieved_;
};

/// Internal consistency check failed (e.g. Hermiticity drift above the
/// re-symmetrization threshold).
class NumericalConsistencyError : public Error {
 public:
  using Error::Error;
};

}  // namespace geosym
