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

// Piecewise drive alpha(t) for the oscillator-assisted two-qubit gate.
//
// Time is dimensionless (hbar = 1); the amplitude alpha0 sets the frequency
// scale. A schedule is an ordered list of segments, each either constant or
// circular (alpha(t) = a * exp(i w t) with t local to the segment), so every
// integral the solvers need has a closed form.

#include <cstddef>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "geosym/types.hpp"

namespace geosym {

enum class CircuitKind { kStep, kCircular };

/// C (forward) or its time-reversed partner C-bar (alpha -> -alpha).
enum class Orientation { kForward, kReversed };

Orientation flipped(Orientation o);
std::string to_string(CircuitKind kind);
std::string to_string(Orientation o);
CircuitKind parse_circuit_kind(std::string_view text);
Orientation parse_orientation(std::string_view text);

class PulseSegment {
 public:
  static PulseSegment constant(Complex value, double duration);
  /// alpha(t) = amplitude * exp(i pi t / (2 quarter_period)); one full period
  /// (duration 4 * quarter_period) unless a duration is given.
  static PulseSegment circular(Complex amplitude, double quarter_period,
                               double duration = 0.0);

  double duration() const { return duration_; }
  Complex amplitude() const { return amplitude_; }
  double angular_rate() const { return angular_rate_; }
  bool is_constant() const { return angular_rate_ == 0.0; }

  Complex value_at(double local_t) const;
  PulseSegment negated() const;

  /// Closed form of int_0^u alpha(t0 + s) exp(lambda * (t0 + s - shift)) ds
  /// for a segment starting at global time t0.
  Complex exp_weighted_integral(double t0, double u, Complex lambda,
                                double shift) const;

  /// Closed form of int_{t0}^{t0+u} alpha(t) t^power dt.
  Complex power_weighted_integral(double t0, double u, int power) const;

  bool operator==(const PulseSegment&) const = default;

 private:
  PulseSegment(Complex amplitude, double angular_rate, double duration)
      : amplitude_(amplitude), angular_rate_(angular_rate), duration_(duration) {}

  Complex amplitude_;
  double angular_rate_;
  double duration_;
};

/// Provenance of a schedule: which base circuit and in which orientations
/// (time order) it was assembled from.
struct ScheduleInfo {
  CircuitKind kind = CircuitKind::kStep;
  double alpha0 = 0.0;
  double tau = 0.0;  // per-circuit pulse length
  std::vector<Orientation> circuits;

  bool operator==(const ScheduleInfo&) const = default;
};

class PulseSchedule {
 public:
  explicit PulseSchedule(std::vector<PulseSegment> segments,
                         ScheduleInfo info = {});

  std::span<const PulseSegment> segments() const { return segments_; }
  const ScheduleInfo& info() const { return info_; }

  double start_time(std::size_t i) const { return starts_[i]; }
  double end_time(std::size_t i) const { return starts_[i] + segments_[i].duration(); }
  double duration() const { return duration_; }
  double min_segment_duration() const;

  /// Index of the segment owning t; boundaries belong to the left segment.
  std::size_t segment_index(double t) const;

  /// Left-continuous drive value.
  Complex alpha(double t) const;

  bool operator==(const PulseSchedule& other) const {
    return segments_ == other.segments_ && info_ == other.info_;
  }

 private:
  std::vector<PulseSegment> segments_;
  std::vector<double> starts_;
  double duration_ = 0.0;
  ScheduleInfo info_;
};

/// k-order symmetrized sequence request. For the step base the per-circuit
/// pulse length tau_n solves n * 2 alpha0^2 tau_n^2 = target_phase.
struct SequenceSpec {
  CircuitKind base = CircuitKind::kStep;
  int order = 0;
  double target_phase = 0.0;
  double alpha0 = 1.0;

  int circuit_count() const { return 1 << order; }
  double pulse_length() const;
};

/// Geometric phase phi (U = exp(-i phi Jy^2)) enclosed by one circuit:
/// 2 a^2 t^2 for the step square, (8/pi) a^2 t^2 for the circle.
double circuit_phase(CircuitKind kind, double alpha0, double tau);

PulseSchedule step_circuit(double alpha0, double tau,
                           Orientation orientation = Orientation::kForward);
PulseSchedule circular_circuit(double alpha0, double tau,
                               Orientation orientation = Orientation::kForward);
PulseSchedule time_reverse(const PulseSchedule& schedule);

/// Orientation pattern S_0 = [C], S_{k+1} = S_k ++ flip(S_k), in time order.
std::vector<Orientation> decoupling_pattern(int order);
PulseSchedule symmetrized_sequence(const SequenceSpec& spec);

/// int_0^t alpha.
Complex integrate_alpha(const PulseSchedule& schedule, double t);

/// exp(-rate t) int_0^t alpha(t') exp(rate t') dt'. With rate = +kappa/2 this
/// is xi_plus, with rate = -kappa/2 it is xi_minus.
Complex filtered_integral(const PulseSchedule& schedule, double rate, double t);

/// I^(j)(T) = int_0^T alpha(t) (kappa t / 2)^j dt.
Complex moment(const PulseSchedule& schedule, int j, double kappa);

struct PathPoint {
  double t;
  Complex z;
};

/// Uniform samples of int_0^t alpha (kappa = 0) or xi_plus(t) (kappa > 0).
std::vector<PathPoint> phase_space_path(const PulseSchedule& schedule,
                                        double kappa, int samples);
void write_path_csv(std::ostream& os, std::span<const PathPoint> path);

// Plain-text key-value form:
//   circuit = step | circular
//   orientation = C | Cbar   (of the first circuit)
//   alpha0, tau, k, phi
struct ScheduleConfig {
  CircuitKind kind = CircuitKind::kStep;
  Orientation orientation = Orientation::kForward;
  double alpha0 = 1.0;
  double tau = 0.0;
  int order = 0;
  double phi = 0.0;
};

ScheduleConfig describe(const PulseSchedule& schedule);
PulseSchedule build_schedule(const ScheduleConfig& config);
std::string serialize_schedule(const PulseSchedule& schedule);
PulseSchedule parse_schedule(std::string_view text);

}  // namespace geosym
