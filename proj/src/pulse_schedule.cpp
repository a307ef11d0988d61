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

#include "geosym/pulse_schedule.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <ostream>
#include <sstream>

#include "geosym/errors.hpp"
#include "geosym/text_io.hpp"

namespace geosym {
namespace {

// exp(z) - 1 without cancellation for small |z|.
Complex expm1(Complex z) {
  const double half_sin = std::sin(0.5 * z.imag());
  const double re = std::expm1(z.real()) * std::cos(z.imag()) -
                    2.0 * half_sin * half_sin;
  const double im = std::exp(z.real()) * std::sin(z.imag());
  return {re, im};
}

// int_0^u exp(z s) ds
Complex exp_integral(Complex z, double u) {
  if (z == Complex{}) return u;
  return expm1(z * u) / z;
}

void require_positive(double v, const char* what) {
  if (!(v > 0.0) || !std::isfinite(v)) {
    throw InvalidParameter(std::string(what) + " must be positive and finite");
  }
}

// Time slack for boundary evaluations at t = T.
double time_slack(double total) { return 1e-12 * std::max(1.0, total); }

double check_time(const PulseSchedule& s, double t) {
  if (!(t >= -time_slack(s.duration()) &&
        t <= s.duration() + time_slack(s.duration()))) {
    throw InvalidParameter("time " + text::exact(t) + " outside [0, " +
                           text::exact(s.duration()) + "]");
  }
  return std::clamp(t, 0.0, s.duration());
}

PulseSchedule assemble(CircuitKind kind, double alpha0, double tau,
                       const std::vector<Orientation>& pattern) {
  const PulseSchedule forward = kind == CircuitKind::kStep
                                    ? step_circuit(alpha0, tau)
                                    : circular_circuit(alpha0, tau);
  std::vector<PulseSegment> segments;
  segments.reserve(pattern.size() * forward.segments().size());
  for (Orientation o : pattern) {
    for (const auto& seg : forward.segments()) {
      segments.push_back(o == Orientation::kForward ? seg : seg.negated());
    }
  }
  return PulseSchedule(std::move(segments), {kind, alpha0, tau, pattern});
}

}  // namespace

Orientation flipped(Orientation o) {
  return o == Orientation::kForward ? Orientation::kReversed
                                    : Orientation::kForward;
}

std::string to_string(CircuitKind kind) {
  return kind == CircuitKind::kStep ? "step" : "circular";
}

std::string to_string(Orientation o) {
  return o == Orientation::kForward ? "C" : "Cbar";
}

CircuitKind parse_circuit_kind(std::string_view text) {
  if (text == "step") return CircuitKind::kStep;
  if (text == "circular") return CircuitKind::kCircular;
  throw InvalidParameter("unknown circuit kind '" + std::string(text) + "'");
}

Orientation parse_orientation(std::string_view text) {
  if (text == "C") return Orientation::kForward;
  if (text == "Cbar") return Orientation::kReversed;
  throw InvalidParameter("unknown orientation '" + std::string(text) + "'");
}

// ---------------------------------------------------------------------------
// PulseSegment

PulseSegment PulseSegment::constant(Complex value, double duration) {
  require_positive(duration, "segment duration");
  return PulseSegment(value, 0.0, duration);
}

PulseSegment PulseSegment::circular(Complex amplitude, double quarter_period,
                                    double duration) {
  require_positive(quarter_period, "quarter period");
  if (duration == 0.0) duration = 4.0 * quarter_period;
  require_positive(duration, "segment duration");
  return PulseSegment(amplitude, std::numbers::pi / (2.0 * quarter_period),
                      duration);
}

Complex PulseSegment::value_at(double local_t) const {
  if (is_constant()) return amplitude_;
  return amplitude_ * std::exp(kI * (angular_rate_ * local_t));
}

PulseSegment PulseSegment::negated() const {
  return PulseSegment(-amplitude_, angular_rate_, duration_);
}

Complex PulseSegment::exp_weighted_integral(double t0, double u, Complex lambda,
                                            double shift) const {
  const Complex z = kI * angular_rate_ + lambda;
  return amplitude_ * std::exp(lambda * (t0 - shift)) * exp_integral(z, u);
}

Complex PulseSegment::power_weighted_integral(double t0, double u,
                                              int power) const {
  if (is_constant()) {
    const double t1 = t0 + u;
    return amplitude_ *
           ((std::pow(t1, power + 1) - std::pow(t0, power + 1)) / (power + 1));
  }
  // t^p = sum_i C(p,i) t0^(p-i) s^i and
  // P_i = int_0^u s^i e^{iws} ds = u^i e^{iwu}/(iw) - i/(iw) P_{i-1}.
  const Complex iw = kI * angular_rate_;
  const Complex end_phase = std::exp(iw * u);
  Complex p_prev = expm1(iw * u) / iw;
  Complex total = std::pow(t0, power) * p_prev;
  double binom = 1.0;
  for (int i = 1; i <= power; ++i) {
    const Complex p_i =
        std::pow(u, i) * end_phase / iw - static_cast<double>(i) / iw * p_prev;
    binom = binom * (power - i + 1) / i;
    total += binom * std::pow(t0, power - i) * p_i;
    p_prev = p_i;
  }
  return amplitude_ * total;
}

// ---------------------------------------------------------------------------
// PulseSchedule

PulseSchedule::PulseSchedule(std::vector<PulseSegment> segments,
                             ScheduleInfo info)
    : segments_(std::move(segments)), info_(std::move(info)) {
  if (segments_.empty()) throw InvalidParameter("schedule has no segments");
  starts_.reserve(segments_.size());
  double t = 0.0;
  for (const auto& seg : segments_) {
    starts_.push_back(t);
    t += seg.duration();
  }
  duration_ = t;
}

double PulseSchedule::min_segment_duration() const {
  double m = segments_.front().duration();
  for (const auto& seg : segments_) m = std::min(m, seg.duration());
  return m;
}

std::size_t PulseSchedule::segment_index(double t) const {
  // Segment i owns (start_i, end_i]; segment 0 also owns t = 0.
  const auto it = std::lower_bound(starts_.begin(), starts_.end(), t);
  const auto i = static_cast<std::size_t>(it - starts_.begin());
  return i == 0 ? 0 : i - 1;
}

Complex PulseSchedule::alpha(double t) const {
  t = check_time(*this, t);
  const std::size_t i = segment_index(t);
  return segments_[i].value_at(t - starts_[i]);
}

// ---------------------------------------------------------------------------
// Circuits

double SequenceSpec::pulse_length() const {
  return std::sqrt(target_phase /
                   (circuit_count() * circuit_phase(base, alpha0, 1.0)));
}

double circuit_phase(CircuitKind kind, double alpha0, double tau) {
  const double area = alpha0 * alpha0 * tau * tau;
  return kind == CircuitKind::kStep ? 2.0 * area
                                    : 8.0 / std::numbers::pi * area;
}

PulseSchedule step_circuit(double alpha0, double tau, Orientation orientation) {
  require_positive(alpha0, "alpha0");
  require_positive(tau, "tau");
  // Time order P-^p, P-^x, P+^p, P+^x: alpha = -i a0, a0, i a0, -a0 under
  // H = [sqrt2 Re(alpha) x - sqrt2 Im(alpha) p] Jy. This ordering gives
  // U(4 tau) = exp(-i 2 a0^2 tau^2 Jy^2) with a positive phase.
  const double sign = orientation == Orientation::kForward ? 1.0 : -1.0;
  const Complex a = sign * alpha0;
  std::vector<PulseSegment> segments{
      PulseSegment::constant(-kI * a, tau), PulseSegment::constant(a, tau),
      PulseSegment::constant(kI * a, tau), PulseSegment::constant(-a, tau)};
  return PulseSchedule(std::move(segments),
                       {CircuitKind::kStep, alpha0, tau, {orientation}});
}

PulseSchedule circular_circuit(double alpha0, double tau,
                               Orientation orientation) {
  require_positive(alpha0, "alpha0");
  require_positive(tau, "tau");
  const double sign = orientation == Orientation::kForward ? 1.0 : -1.0;
  return PulseSchedule({PulseSegment::circular(sign * alpha0, tau)},
                       {CircuitKind::kCircular, alpha0, tau, {orientation}});
}

PulseSchedule time_reverse(const PulseSchedule& schedule) {
  std::vector<PulseSegment> segments;
  segments.reserve(schedule.segments().size());
  for (const auto& seg : schedule.segments()) segments.push_back(seg.negated());
  ScheduleInfo info = schedule.info();
  for (auto& o : info.circuits) o = flipped(o);
  return PulseSchedule(std::move(segments), std::move(info));
}

std::vector<Orientation> decoupling_pattern(int order) {
  if (order < 0 || order > 24) {
    throw InvalidParameter("decoupling order must be in [0, 24]");
  }
  std::vector<Orientation> pattern{Orientation::kForward};
  for (int k = 0; k < order; ++k) {
    const std::size_t n = pattern.size();
    for (std::size_t i = 0; i < n; ++i) pattern.push_back(flipped(pattern[i]));
  }
  return pattern;
}

PulseSchedule symmetrized_sequence(const SequenceSpec& spec) {
  require_positive(spec.target_phase, "target phase");
  require_positive(spec.alpha0, "alpha0");
  auto pattern = decoupling_pattern(spec.order);
  return assemble(spec.base, spec.alpha0, spec.pulse_length(), pattern);
}

// ---------------------------------------------------------------------------
// Integrals

Complex integrate_alpha(const PulseSchedule& schedule, double t) {
  return filtered_integral(schedule, 0.0, t);
}

Complex filtered_integral(const PulseSchedule& schedule, double rate,
                          double t) {
  t = check_time(schedule, t);
  Complex acc{};
  const auto segs = schedule.segments();
  for (std::size_t i = 0; i < segs.size(); ++i) {
    const double t0 = schedule.start_time(i);
    if (t0 >= t) break;
    const double u = std::min(segs[i].duration(), t - t0);
    acc += segs[i].exp_weighted_integral(t0, u, rate, t);
  }
  return acc;
}

Complex moment(const PulseSchedule& schedule, int j, double kappa) {
  if (j < 0) throw InvalidParameter("moment order must be non-negative");
  if (!(kappa >= 0.0)) throw InvalidParameter("kappa must be non-negative");
  Complex acc{};
  const auto segs = schedule.segments();
  for (std::size_t i = 0; i < segs.size(); ++i) {
    acc += segs[i].power_weighted_integral(schedule.start_time(i),
                                           segs[i].duration(), j);
  }
  return acc * std::pow(0.5 * kappa, j);
}

std::vector<PathPoint> phase_space_path(const PulseSchedule& schedule,
                                        double kappa, int samples) {
  if (samples < 2) throw InvalidParameter("path needs at least two samples");
  if (!(kappa >= 0.0)) throw InvalidParameter("kappa must be non-negative");
  std::vector<PathPoint> path;
  path.reserve(samples);
  const double total = schedule.duration();
  for (int i = 0; i < samples; ++i) {
    const double t = i + 1 == samples ? total : total * i / (samples - 1);
    path.push_back({t, filtered_integral(schedule, 0.5 * kappa, t)});
  }
  return path;
}

void write_path_csv(std::ostream& os, std::span<const PathPoint> path) {
  os << "t,re,im\n";
  for (const auto& p : path) {
    os << text::fixed(p.t) << ',' << text::fixed(p.z.real()) << ','
       << text::fixed(p.z.imag()) << '\n';
  }
}

// ---------------------------------------------------------------------------
// Key-value form

ScheduleConfig describe(const PulseSchedule& schedule) {
  const auto& info = schedule.info();
  if (info.circuits.empty() || info.alpha0 <= 0.0 || info.tau <= 0.0) {
    throw InvalidParameter("schedule was not built from a base circuit");
  }
  int order = 0;
  while ((std::size_t{1} << order) < info.circuits.size()) ++order;
  auto pattern = decoupling_pattern(order);
  const Orientation first = info.circuits.front();
  if (first == Orientation::kReversed) {
    for (auto& o : pattern) o = flipped(o);
  }
  if (pattern != info.circuits) {
    throw InvalidParameter("circuit pattern is not a decoupling sequence");
  }
  ScheduleConfig cfg;
  cfg.kind = info.kind;
  cfg.orientation = first;
  cfg.alpha0 = info.alpha0;
  cfg.tau = info.tau;
  cfg.order = order;
  cfg.phi = static_cast<double>(info.circuits.size()) *
            circuit_phase(info.kind, info.alpha0, info.tau);
  return cfg;
}

PulseSchedule build_schedule(const ScheduleConfig& config) {
  require_positive(config.alpha0, "alpha0");
  const auto pattern = decoupling_pattern(config.order);
  double tau = config.tau;
  if (config.phi > 0.0) {
    SequenceSpec spec{config.kind, config.order, config.phi, config.alpha0};
    const double derived = spec.pulse_length();
    if (tau > 0.0 && std::abs(tau - derived) > 1e-9 * derived) {
      throw InvalidParameter("tau inconsistent with phi: expected " +
                             text::exact(derived));
    }
    if (tau <= 0.0) tau = derived;
  }
  require_positive(tau, "tau (or phi)");
  PulseSchedule s = assemble(config.kind, config.alpha0, tau, pattern);
  return config.orientation == Orientation::kForward ? s : time_reverse(s);
}

std::string serialize_schedule(const PulseSchedule& schedule) {
  const ScheduleConfig cfg = describe(schedule);
  std::ostringstream os;
  os << "circuit = " << to_string(cfg.kind) << '\n'
     << "orientation = " << to_string(cfg.orientation) << '\n'
     << "alpha0 = " << text::exact(cfg.alpha0) << '\n'
     << "tau = " << text::exact(cfg.tau) << '\n'
     << "k = " << cfg.order << '\n'
     << "phi = " << text::exact(cfg.phi) << '\n';
  return os.str();
}

PulseSchedule parse_schedule(std::string_view text) {
  ScheduleConfig cfg;
  cfg.alpha0 = 1.0;
  for (const auto& kv : text::parse_key_values(text)) {
    if (kv.key == "circuit") {
      cfg.kind = parse_circuit_kind(kv.value);
    } else if (kv.key == "orientation") {
      cfg.orientation = parse_orientation(kv.value);
    } else if (kv.key == "alpha0") {
      cfg.alpha0 = text::to_double(kv.value);
    } else if (kv.key == "tau") {
      cfg.tau = text::to_double(kv.value);
    } else if (kv.key == "k") {
      cfg.order = text::to_int(kv.value);
    } else if (kv.key == "phi") {
      cfg.phi = text::to_double(kv.value);
    } else {
      throw InvalidParameter("unknown schedule key '" + kv.key + "'");
    }
  }
  return build_schedule(cfg);
}

}  // namespace geosym
