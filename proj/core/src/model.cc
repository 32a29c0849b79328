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

#include "ssmr/model.h"

#include <cmath>

#include "absl/strings/str_format.h"
#include "ssmr/angles.h"

namespace ssmr {
namespace {

bool AllFinite(std::initializer_list<double> values) {
  for (double v : values) {
    if (!std::isfinite(v)) return false;
  }
  return true;
}

}  // namespace

Pose2D::Pose2D(double x, double y, double theta)
    : x_(x), y_(y), theta_(WrapAngle(theta)) {}

void Pose2D::set_theta(double theta) { theta_ = WrapAngle(theta); }

bool Pose2D::IsFinite() const { return AllFinite({x_, y_, theta_}); }

double BodyTwist::SlipAngle() const { return std::atan2(v_y, v_x); }

bool BodyTwist::IsFinite() const { return AllFinite({v_x, v_y, omega}); }

absl::Status ValidateSlip(const SlipState& slip, double cap) {
  if (!AllFinite({slip.s_v, slip.sigma_v})) {
    return absl::InvalidArgumentError("slip state must be finite");
  }
  if (slip.s_v >= 1.0 || std::abs(slip.s_v) > cap) {
    return absl::OutOfRangeError(absl::StrFormat(
        "degenerate slip: s_v = %g outside [-%g, %g]", slip.s_v, cap, cap));
  }
  return absl::OkStatus();
}

absl::Status ValidateGeometry(const RobotGeometry& geometry,
                              const IcrBounds& bounds) {
  if (!(geometry.wheel_radius > 0.0) || !(geometry.half_track > 0.0) ||
      !(geometry.rear_offset > 0.0) || !(geometry.front_offset > 0.0)) {
    return absl::InvalidArgumentError(
        "wheel radius, half track and axle offsets must be positive");
  }
  if (!(geometry.icr_offset >= bounds.lo && geometry.icr_offset <= bounds.hi)) {
    return absl::InvalidArgumentError(
        absl::StrFormat("ICR offset %g outside [%g, %g]", geometry.icr_offset,
                        bounds.lo, bounds.hi));
  }
  return absl::OkStatus();
}

PoseRate ComputePoseRate(const Pose2D& pose, const BodyTwist& twist) {
  const double c = std::cos(pose.theta());
  const double s = std::sin(pose.theta());
  return {twist.v_x * c - twist.v_y * s, twist.v_x * s + twist.v_y * c,
          twist.omega};
}

IdealVelocities ComputeIdealVelocities(const WheelSpeeds& wheels,
                                       const RobotGeometry& geometry) {
  const double r = geometry.wheel_radius;
  IdealVelocities out;
  out.v_x = r * (wheels.left + wheels.right) / 2.0;
  out.omega = r * (wheels.right - wheels.left) / (2.0 * geometry.half_track);
  out.v_y = geometry.icr_offset * out.omega;
  return out;
}

absl::StatusOr<SlipTwist> ComputeTwistWithSlip(const WheelSpeeds& wheels,
                                               const SlipState& slip,
                                               const RobotGeometry& geometry,
                                               double icr_floor) {
  const double r = geometry.wheel_radius;
  SlipTwist out;
  out.xi = r / 2.0 * (wheels.right + wheels.left) * (1.0 - slip.s_v);
  out.rho = r / (2.0 * geometry.half_track) * (wheels.right - wheels.left);
  if (slip.sigma_v != 0.0) {
    if (std::abs(geometry.icr_offset) < icr_floor) {
      return absl::FailedPreconditionError(absl::StrFormat(
          "degenerate ICR: |x0| = %g below floor %g with nonzero skid",
          std::abs(geometry.icr_offset), icr_floor));
    }
    out.rho += slip.sigma_v / geometry.icr_offset;
  }
  return out;
}

absl::StatusOr<double> SlipFromVelocities(double ideal_v_x, double v_x,
                                          double v_eps) {
  if (!(std::abs(ideal_v_x) > v_eps)) {
    return absl::InvalidArgumentError(absl::StrFormat(
        "undefined slip: |ideal v_x| = %g <= %g", std::abs(ideal_v_x), v_eps));
  }
  return (ideal_v_x - v_x) / ideal_v_x;
}

double SkidFromVelocities(double ideal_v_y, double v_y) {
  return ideal_v_y - v_y;
}

absl::StatusOr<double> AngleSkid(const BodyTwist& ideal,
                                 const BodyTwist& actual) {
  if ((ideal.v_x == 0.0 && ideal.v_y == 0.0) ||
      (actual.v_x == 0.0 && actual.v_y == 0.0)) {
    return absl::InvalidArgumentError("undefined angle: zero-magnitude twist");
  }
  return WrapAngle(ideal.SlipAngle() - actual.SlipAngle());
}

SideVelocities ComputeSideVelocities(double v_x, double omega,
                                     const RobotGeometry& geometry) {
  const double c = geometry.half_track;
  const double x0 = geometry.icr_offset;
  return {v_x - c * omega, v_x + c * omega,
          (-x0 + geometry.front_offset) * omega,
          (-x0 - geometry.rear_offset) * omega};
}

absl::StatusOr<WheelSpeeds> WheelSpeedsFromSides(double v_left, double v_right,
                                                 double slip_left,
                                                 double slip_right,
                                                 double wheel_radius) {
  if (!(wheel_radius > 0.0)) {
    return absl::InvalidArgumentError("wheel radius must be positive");
  }
  if (!(slip_left < 1.0 - kSlipTolerance) ||
      !(slip_right < 1.0 - kSlipTolerance)) {
    return absl::OutOfRangeError(absl::StrFormat(
        "degenerate slip: side slips (%g, %g) reach 1", slip_left, slip_right));
  }
  return WheelSpeeds{v_left / (wheel_radius * (1.0 - slip_left)),
                     v_right / (wheel_radius * (1.0 - slip_right))};
}

absl::StatusOr<IcrPoint> ComputeIcr(double v_x, double v_y, double omega,
                                    double omega_eps) {
  if (!(std::abs(omega) > omega_eps)) {
    return absl::OutOfRangeError(
        absl::StrFormat("ICR at infinity: |omega| = %g", std::abs(omega)));
  }
  return IcrPoint{-v_y / omega, v_x / omega};
}

PoseRate ComputeFullPoseRate(const Pose2D& pose, double xi, double rho,
                             double icr_offset) {
  const double c = std::cos(pose.theta());
  const double s = std::sin(pose.theta());
  return {xi * c + icr_offset * rho * s, xi * s - icr_offset * rho * c, rho};
}

double ConstraintResidual(const Pose2D& pose, const PoseRate& rate,
                          double icr_offset) {
  return -std::sin(pose.theta()) * rate.x_dot +
         std::cos(pose.theta()) * rate.y_dot + icr_offset * rate.theta_dot;
}

}  // namespace ssmr
