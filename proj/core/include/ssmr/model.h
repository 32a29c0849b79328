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

#ifndef SSMR_MODEL_H_
#define SSMR_MODEL_H_

// Kinematics of a skid-steering mobile robot with vehicle-level longitudinal
// slip and undesired lateral skid.
//
// Frames: the body frame has x forward, y to the left, and its origin at the
// centre of mass. The instantaneous centre of rotation (ICR) sits at body
// coordinates (x0, y0).

#include "absl/status/status.h"
#include "absl/status/statusor.h"

namespace ssmr {

inline constexpr double kDefaultSlipCap = 0.95;
inline constexpr double kIcrOffsetFloor = 1e-3;   // m
inline constexpr double kVelocityEpsilon = 1e-6;  // m/s
inline constexpr double kYawRateEpsilon = 1e-6;   // rad/s
inline constexpr double kSlipTolerance = 1e-9;

// Planar configuration. The heading is kept in (-pi, pi].
class Pose2D {
 public:
  Pose2D() = default;
  Pose2D(double x, double y, double theta);

  double x() const { return x_; }
  double y() const { return y_; }
  double theta() const { return theta_; }

  void set_x(double x) { x_ = x; }
  void set_y(double y) { y_ = y; }
  void set_theta(double theta);

  bool IsFinite() const;

  friend bool operator==(const Pose2D&, const Pose2D&) = default;

 private:
  double x_ = 0.0;
  double y_ = 0.0;
  double theta_ = 0.0;
};

// Body-frame velocity of the centre of mass.
struct BodyTwist {
  double v_x = 0.0;    // m/s, longitudinal
  double v_y = 0.0;    // m/s, lateral
  double omega = 0.0;  // rad/s

  // Angle of the total velocity relative to the body x axis, in (-pi, pi].
  double SlipAngle() const;
  bool IsFinite() const;
};

// One angular speed per side; the wheels on a side are mechanically coupled.
struct WheelSpeeds {
  double left = 0.0;   // rad/s
  double right = 0.0;  // rad/s
};

// Vehicle-level slip ratio and undesired skid velocity.
struct SlipState {
  double s_v = 0.0;      // dimensionless, strictly below 1
  double sigma_v = 0.0;  // m/s

  friend bool operator==(const SlipState&, const SlipState&) = default;
};

// Fails unless |s_v| <= cap, s_v < 1 and both fields are finite.
absl::Status ValidateSlip(const SlipState& slip, double cap = kDefaultSlipCap);

struct RobotGeometry {
  double wheel_radius = 0.11;  // m
  double half_track = 0.2;     // m
  double rear_offset = 0.15;   // m, centre of mass to rear axle
  double front_offset = 0.15;  // m, centre of mass to front axle
  double icr_offset = 0.0;     // m, ICR longitudinal offset x0
};

struct IcrBounds {
  double lo = -0.15;
  double hi = 0.15;
};

absl::Status ValidateGeometry(const RobotGeometry& geometry,
                              const IcrBounds& bounds = {});

struct PoseRate {
  double x_dot = 0.0;
  double y_dot = 0.0;
  double theta_dot = 0.0;
};

// Global-frame velocity of a body moving with `twist`.
PoseRate ComputePoseRate(const Pose2D& pose, const BodyTwist& twist);

// No-slip velocities implied by the wheel speeds.
struct IdealVelocities {
  double v_x = 0.0;
  double omega = 0.0;
  double v_y = 0.0;
};

IdealVelocities ComputeIdealVelocities(const WheelSpeeds& wheels,
                                       const RobotGeometry& geometry);

// Longitudinal and angular velocity under slip and skid.
struct SlipTwist {
  double xi = 0.0;   // m/s
  double rho = 0.0;  // rad/s
};

// Fails with FailedPrecondition ("degenerate ICR") when the skid is nonzero and
// |x0| is below `icr_floor`.
absl::StatusOr<SlipTwist> ComputeTwistWithSlip(
    const WheelSpeeds& wheels, const SlipState& slip,
    const RobotGeometry& geometry, double icr_floor = kIcrOffsetFloor);

// Slip ratio from the no-slip and actual longitudinal velocities.
absl::StatusOr<double> SlipFromVelocities(double ideal_v_x, double v_x,
                                          double v_eps = kVelocityEpsilon);

// Undesired skid from the no-slip and actual lateral velocities.
double SkidFromVelocities(double ideal_v_y, double v_y);

// Skid expressed as a direction deviation, wrapped into (-pi, pi].
absl::StatusOr<double> AngleSkid(const BodyTwist& ideal,
                                 const BodyTwist& actual);

// Longitudinal velocity of the left and right wheel columns and lateral
// velocity of the front and back wheel rows.
struct SideVelocities {
  double left = 0.0;
  double right = 0.0;
  double front = 0.0;
  double back = 0.0;
};

SideVelocities ComputeSideVelocities(double v_x, double omega,
                                     const RobotGeometry& geometry);

// Wheel speeds that realise the given side velocities under per-side slip.
absl::StatusOr<WheelSpeeds> WheelSpeedsFromSides(double v_left, double v_right,
                                                 double slip_left,
                                                 double slip_right,
                                                 double wheel_radius);

struct IcrPoint {
  double x0 = 0.0;
  double y0 = 0.0;
};

// Fails with OutOfRange ("ICR at infinity") for |omega| <= omega_eps.
absl::StatusOr<IcrPoint> ComputeIcr(double v_x, double v_y, double omega,
                                    double omega_eps = kYawRateEpsilon);

// Pose rate of the constrained model: body lateral velocity is -x0 * rho.
PoseRate ComputeFullPoseRate(const Pose2D& pose, double xi, double rho,
                             double icr_offset);

// A(q) * q_dot for the constraint row [-sin(theta), cos(theta), x0]. Zero for
// every rate produced by ComputeFullPoseRate.
double ConstraintResidual(const Pose2D& pose, const PoseRate& rate,
                          double icr_offset);

}  // namespace ssmr

#endif  // SSMR_MODEL_H_
