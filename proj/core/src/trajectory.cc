// Copyright 2026 The ssmr-smc Authors
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

#include "ssmr/trajectory.h"

#include <array>
#include <cmath>

#include "absl/strings/str_format.h"
#include "ssmr/angles.h"

namespace ssmr {
namespace {

// Profiles are defined for all t; range checks happen at the API boundary.
DesiredProfile ProfileUnchecked(TrajectoryKind kind, double t) {
  switch (kind) {
    case TrajectoryKind::kStraight:
      return {0.3, 0.0, 0.0, 0.0};
    case TrajectoryKind::kCircular:
      return {0.2, 0.0, 0.2, 0.0};
    case TrajectoryKind::kBow:
      return {0.2 * std::sin(0.1 * t), 0.02 * std::cos(0.1 * t),
              0.2 * std::cos(0.1 * t), -0.02 * std::sin(0.1 * t)};
  }
  return {};
}

using State = std::array<double, 3>;  // x, y, unwrapped theta

State Rate(TrajectoryKind kind, double t, const State& q) {
  const DesiredProfile p = ProfileUnchecked(kind, t);
  return {p.v * std::cos(q[2]), p.v * std::sin(q[2]), p.omega};
}

State Rk4Step(TrajectoryKind kind, double t, const State& q, double h) {
  auto axpy = [](const State& a, double s, const State& b) {
    return State{a[0] + s * b[0], a[1] + s * b[1], a[2] + s * b[2]};
  };
  const State k1 = Rate(kind, t, q);
  const State k2 = Rate(kind, t + h / 2, axpy(q, h / 2, k1));
  const State k3 = Rate(kind, t + h / 2, axpy(q, h / 2, k2));
  const State k4 = Rate(kind, t + h, axpy(q, h, k3));
  State out;
  for (int i = 0; i < 3; ++i) {
    out[i] = q[i] + h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
  }
  return out;
}

absl::Status CheckRange(const TrajectorySpec& spec, double t) {
  if (!(spec.duration > 0.0)) {
    return absl::InvalidArgumentError("trajectory duration must be positive");
  }
  if (!(t >= 0.0 && t <= spec.duration + 1e-9)) {
    return absl::OutOfRangeError(absl::StrFormat(
        "t = %g outside [0, %g]", t, spec.duration));
  }
  return absl::OkStatus();
}

}  // namespace

std::string_view TrajectoryName(TrajectoryKind kind) {
  switch (kind) {
    case TrajectoryKind::kStraight:
      return "straight";
    case TrajectoryKind::kCircular:
      return "circular";
    case TrajectoryKind::kBow:
      return "bow";
  }
  return "unknown";
}

absl::StatusOr<TrajectoryKind> ParseTrajectoryKind(std::string_view name) {
  if (name == "straight") return TrajectoryKind::kStraight;
  if (name == "circular") return TrajectoryKind::kCircular;
  if (name == "bow") return TrajectoryKind::kBow;
  return absl::InvalidArgumentError(
      absl::StrFormat("unknown trajectory '%s'", std::string(name)));
}

double DefaultDuration(TrajectoryKind kind) {
  switch (kind) {
    case TrajectoryKind::kStraight:
      return 30.0;
    case TrajectoryKind::kCircular:
      return 35.0;
    case TrajectoryKind::kBow:
      return 2.0 * (2.0 * kPi / 0.1);
  }
  return 30.0;
}

absl::StatusOr<DesiredProfile> DesiredProfileAt(const TrajectorySpec& spec,
                                                double t) {
  if (absl::Status s = CheckRange(spec, t); !s.ok()) return s;
  return ProfileUnchecked(spec.kind, t);
}

std::size_t StepCount(double duration, double dt) {
  return static_cast<std::size_t>(std::llround(duration / dt));
}

absl::StatusOr<ReferenceTrajectory> ReferenceTrajectory::Create(
    const TrajectorySpec& spec, double dt) {
  if (absl::Status s = CheckRange(spec, 0.0); !s.ok()) return s;
  if (!(dt > 0.0)) return absl::InvalidArgumentError("dt must be positive");
  ReferenceTrajectory ref;
  ref.spec_ = spec;
  ref.dt_ = dt;
  const std::size_t steps = StepCount(spec.duration, dt);
  ref.states_.reserve(steps + 1);
  ref.headings_.reserve(steps + 1);
  State q = {0.0, 0.0, 0.0};
  for (std::size_t k = 0; k <= steps; ++k) {
    const double t = static_cast<double>(k) * dt;
    const DesiredProfile p = ProfileUnchecked(spec.kind, t);
    DesiredState d;
    d.pose = Pose2D(q[0], q[1], q[2]);
    d.v = p.v;
    d.v_dot = p.v_dot;
    d.omega = p.omega;
    d.omega_dot = p.omega_dot;
    ref.states_.push_back(d);
    ref.headings_.push_back(q[2]);
    q = Rk4Step(spec.kind, t, q, dt);
  }
  return ref;
}

absl::StatusOr<Pose2D> DesiredPoseAt(const TrajectorySpec& spec, double t,
                                     double dt) {
  if (absl::Status s = CheckRange(spec, t); !s.ok()) return s;
  if (!(dt > 0.0)) return absl::InvalidArgumentError("dt must be positive");
  const auto full_steps =
      static_cast<std::size_t>(std::floor(t / dt + 1e-9));
  State q = {0.0, 0.0, 0.0};
  for (std::size_t k = 0; k < full_steps; ++k) {
    q = Rk4Step(spec.kind, static_cast<double>(k) * dt, q, dt);
  }
  const double tail = t - static_cast<double>(full_steps) * dt;
  if (tail > 1e-12) {
    q = Rk4Step(spec.kind, static_cast<double>(full_steps) * dt, q, tail);
  }
  return Pose2D(q[0], q[1], q[2]);
}

}  // namespace ssmr
