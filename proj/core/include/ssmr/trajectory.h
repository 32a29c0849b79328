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

#ifndef SSMR_TRAJECTORY_H_
#define SSMR_TRAJECTORY_H_

// Reference manoeuvres and the ideal virtual robot that generates the desired
// poses from them.

#include <string>
#include <string_view>
#include <vector>

#include "absl/status/statusor.h"
#include "ssmr/controller.h"
#include "ssmr/model.h"

namespace ssmr {

enum class TrajectoryKind { kStraight, kCircular, kBow };

std::string_view TrajectoryName(TrajectoryKind kind);
absl::StatusOr<TrajectoryKind> ParseTrajectoryKind(std::string_view name);

// Default run length for each manoeuvre, in seconds. The bow covers two full
// periods of its velocity profile.
double DefaultDuration(TrajectoryKind kind);

struct TrajectorySpec {
  TrajectoryKind kind = TrajectoryKind::kStraight;
  double duration = 30.0;
};

struct DesiredProfile {
  double v = 0.0;
  double v_dot = 0.0;
  double omega = 0.0;
  double omega_dot = 0.0;
};

// Velocity profile and its exact derivative. OutOfRange outside
// [0, duration].
absl::StatusOr<DesiredProfile> DesiredProfileAt(const TrajectorySpec& spec,
                                                double t);

// Desired poses of the ideal robot (no slip, no lateral velocity) sampled on a
// fixed grid, integrated with classical RK4 from the origin.
class ReferenceTrajectory {
 public:
  static absl::StatusOr<ReferenceTrajectory> Create(const TrajectorySpec& spec,
                                                    double dt);

  std::size_t size() const { return states_.size(); }
  double dt() const { return dt_; }
  const TrajectorySpec& spec() const { return spec_; }
  // Tick k is at time k * dt.
  const DesiredState& At(std::size_t tick) const { return states_[tick]; }
  // Unwrapped desired heading at tick k.
  double UnwrappedHeading(std::size_t tick) const { return headings_[tick]; }

 private:
  ReferenceTrajectory() = default;

  TrajectorySpec spec_;
  double dt_ = 0.0;
  std::vector<DesiredState> states_;
  std::vector<double> headings_;
};

// Number of integration steps covering `duration` at `dt`.
std::size_t StepCount(double duration, double dt);

// Desired pose at an arbitrary time: RK4 steps of `dt` from the origin with a
// shorter final step landing exactly on t.
absl::StatusOr<Pose2D> DesiredPoseAt(const TrajectorySpec& spec, double t,
                                     double dt);

}  // namespace ssmr

#endif  // SSMR_TRAJECTORY_H_
