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

#include "ssmr/controller.h"

#include <algorithm>
#include <array>
#include <cmath>

#include "absl/strings/str_format.h"
#include "ssmr/angles.h"

namespace ssmr {

std::vector<GainFinding> ValidateGains(const ControllerGains& g) {
  std::vector<GainFinding> findings;
  if (!(g.lambda1 > 1.0) || !(g.lambda2 > 1.0)) {
    findings.push_back(
        {kManifoldSlopeCondition,
         absl::StrFormat("manifold slopes must exceed 1 so trajectories outside "
                         "the boundary layer enter it: lambda1 = %g, "
                         "lambda2 = %g",
                         g.lambda1, g.lambda2)});
  }
  if (!(g.gamma2 <= 4.0 * g.lambda2 * g.kbar2)) {
    findings.push_back(
        {kBoundaryLayerCondition,
         absl::StrFormat("cross-track boundary layer too wide: gamma2 = %g > "
                         "4 * lambda2 * Kbar2 = %g",
                         g.gamma2, 4.0 * g.lambda2 * g.kbar2)});
  }
  const bool positive = g.kbar1 > 0.0 && g.kbar2 > 0.0 && g.gamma1 > 0.0 &&
                        g.gamma2 > 0.0 && g.x0_reach > 0.0 && g.v_max > 0.0 &&
                        g.omega_max > 0.0 &&
                        std::abs(g.x0_comp) >= kIcrOffsetFloor;
  if (!positive) {
    findings.push_back(
        {kPositivityCondition,
         "Kbar1, Kbar2, gamma1, gamma2, x0_reach, v_max and omega_max must be "
         "positive and |x0_comp| must be at least the ICR floor"});
  }
  return findings;
}

double AlongTrackLayerBound(double e1, const ControllerGains& g) {
  const double offset = std::abs(g.x0_hat) + std::abs(e1);
  if (offset == 0.0) return 0.0;
  const double denominator =
      g.kbar1 + 16.0 * g.kbar2 * g.kbar2 * g.lambda2 / offset + std::abs(e1);
  return g.lambda1 * e1 * e1 / denominator;
}

GlobalError ComputeGlobalError(const Pose2D& desired, const Pose2D& actual) {
  return {desired.x() - actual.x(), desired.y() - actual.y(),
          WrapAngle(desired.theta() - actual.theta())};
}

LocalError ToLocalError(const GlobalError& e, double theta) {
  const double c = std::cos(theta);
  const double s = std::sin(theta);
  return {c * e.x + s * e.y, -s * e.x + c * e.y, e.theta};
}

LocalErrorRate ComputeErrorRates(const LocalError& eps, double v_x,
                                 double omega, const DesiredState& d,
                                 double x0, double x0_ref) {
  const double c3 = std::cos(eps.heading);
  const double s3 = std::sin(eps.heading);
  LocalErrorRate rate;
  rate.along = omega * eps.cross + d.v * c3 + d.omega * x0_ref * s3 - v_x;
  rate.cross = (x0 - eps.along) * omega + d.v * s3 - d.omega * x0_ref * c3;
  rate.heading = d.omega - omega;
  return rate;
}

ManifoldValues ComputeManifolds(const LocalError& eps,
                                const LocalErrorRate& rate,
                                const ControllerGains& g) {
  return {g.lambda1 * eps.along + rate.along,
          g.lambda2 * eps.cross + rate.cross};
}

DriftTerms ComputeDriftTerms(const LocalError& eps, double v, double w,
                             const DesiredState& d, const ControllerGains& g,
                             const DynamicsParams& p, double x0,
                             double x0_ref) {
  const double e1 = eps.along;
  const double e2 = eps.cross;
  const double c3 = std::cos(eps.heading);
  const double s3 = std::sin(eps.heading);
  const double l1 = g.lambda1;
  const double l2 = g.lambda2;
  // Free yaw acceleration and free longitudinal deceleration of the plant.
  const double yaw_drift = -p.c5 / p.c2 * v * w - p.c6 / p.c2 * w;
  const double surge_drift = -p.c3 / p.c1 * w * w + p.c4 / p.c1 * v;
  const double heading_rate = d.omega - w;

  DriftTerms h;
  const double xr = x0_ref;
  h.h1 = yaw_drift * e2 +
         w * (-w * e1 + d.v * s3 - d.omega * xr * c3 + w * x0 + l1 * e2) -
         l1 * v + surge_drift + d.v * (-heading_rate * s3 + l1 * c3) +
         d.v_dot * c3 + d.omega_dot * xr * s3 +
         d.omega * (xr * heading_rate * c3 + l1 * xr * s3);
  h.h2 = -w * (w * e2 + d.v * c3 + d.omega * xr * s3 - v) +
         (x0 - e1) * yaw_drift + d.v_dot * s3 + heading_rate * d.v * c3 -
         d.omega_dot * xr * c3 + heading_rate * d.omega * xr * s3 +
         l2 * ((x0 - e1) * w + d.v * s3 - d.omega * xr * c3);
  return h;
}

double DriftCrossSensitivity(double v, double w, const ControllerGains& g,
                             const DynamicsParams& p) {
  return (p.c5 * v * w + p.c6 * w) / p.c2 - g.lambda2 * w;
}

ManifoldValues ManifoldRates(const DriftTerms& h, const LocalError& eps,
                             double v_r, double omega_r,
                             const DynamicsParams& p, double x0) {
  return {h.h1 + eps.cross * omega_r / p.c2 - v_r / p.c1,
          h.h2 + (x0 - eps.along) * omega_r / p.c2};
}

EquivalentControl ComputeEquivalentControl(const DriftTerms& h,
                                           const LocalError& eps, double v,
                                           double w, const ControllerGains& g,
                                           const DynamicsParams& p) {
  const double offset = g.x0_hat - eps.along;
  EquivalentControl out;
  double quotient;  // h2 / (x0_hat - e1)
  if (std::abs(offset) >= g.singular_band) {
    quotient = h.h2 / offset;
  } else {
    quotient = -DriftCrossSensitivity(v, w, g, p);
    out.regularized = true;
  }
  out.omega = -p.c2 * quotient;
  out.v = p.c1 * (h.h1 - eps.cross * quotient);
  return out;
}

DriftBounds ComputeDriftBounds(const LocalError& eps, double v, double w,
                               const DesiredState& d, const ControllerGains& g,
                               const UncertaintyEnvelope& envelope,
                               double x0, double x0_ref) {
  const DynamicsParams lo = envelope.Lower();
  const DynamicsParams hi = envelope.Upper();
  const std::array<std::pair<double, double>, 6> range = {{
      {lo.c1, hi.c1}, {lo.c2, hi.c2}, {lo.c3, hi.c3},
      {lo.c4, hi.c4}, {lo.c5, hi.c5}, {lo.c6, hi.c6},
  }};
  // h1 and h2 are monotone in each coefficient, so the extremes over the box
  // are attained at its corners.
  DriftBounds bounds;
  for (unsigned mask = 0; mask < 64; ++mask) {
    auto pick = [&](int i) {
      return (mask >> i) & 1u ? range[i].second : range[i].first;
    };
    const DynamicsParams corner{pick(0), pick(1), pick(2),
                                pick(3), pick(4), pick(5)};
    const DriftTerms h = ComputeDriftTerms(eps, v, w, d, g, corner, x0, x0_ref);
    bounds.h1 = std::max(bounds.h1, std::abs(h.h1));
    bounds.h2 = std::max(bounds.h2, std::abs(h.h2));
  }
  bounds.h1 *= 1.0 + g.drift_bound_margin;
  bounds.h2 *= 1.0 + g.drift_bound_margin;
  return bounds;
}

double Sat(double u) { return std::clamp(u, -1.0, 1.0); }

double Sign(double u) { return u > 0.0 ? 1.0 : (u < 0.0 ? -1.0 : 0.0); }

ReachingControl ComputeReachingControl(const ManifoldValues& s,
                                       const LocalError& eps,
                                       const ControllerGains& g,
                                       const UncertaintyEnvelope& envelope,
                                       const DriftBounds& bounds) {
  const DynamicsParams upper = envelope.Upper();
  const double switch1 = g.use_sat ? Sat(s.s1 / g.gamma1) : Sign(s.s1);
  const double switch2 = g.use_sat ? Sat(s.s2 / g.gamma2) : Sign(s.s2);
  // The reaching gains are specified directly, so k_i = Kbar_i + hbar_i.
  const double k1 = g.kbar1 + bounds.h1;
  const double k2 = g.kbar2 + bounds.h2;
  const double denominator =
      std::max(g.x0_reach - std::abs(eps.along), g.reach_denominator_floor);
  // The yaw command reaches s2 through the factor (x0_hat - e1), so its sign
  // is carried explicitly.
  const double direction = g.x0_hat - eps.along >= 0.0 ? 1.0 : -1.0;
  ReachingControl out;
  out.omega =
      -direction * (upper.c2 / denominator * (-bounds.h2 + k2)) * switch2;
  // Only the part of the yaw command the actuator can deliver couples into s1.
  const double delivered = std::clamp(out.omega, -g.omega_max, g.omega_max);
  out.v = -(upper.c1 * (bounds.h1 + eps.cross * delivered /
                                        envelope.nominal.c2 - k1)) *
          switch1;
  return out;
}

VelocityCommand SaturateCommand(double v, double omega,
                                const ControllerGains& g) {
  return {std::clamp(v, -g.v_max, g.v_max),
          std::clamp(omega, -g.omega_max, g.omega_max)};
}

absl::StatusOr<VelocityCommand> Compensate(double v_r, double omega_r,
                                           const SlipState& estimate,
                                           const ControllerGains& g) {
  if (!(estimate.s_v <= g.slip_cap)) {
    return absl::OutOfRangeError(absl::StrFormat(
        "degenerate slip: estimate %g exceeds cap %g", estimate.s_v,
        g.slip_cap));
  }
  const double v_c = v_r / (1.0 - estimate.s_v);
  const double omega_c = omega_r + estimate.sigma_v / g.x0_comp;
  return SaturateCommand(v_c, omega_c, g);
}

double EffectiveIcrOffset(const ControllerGains& g, double v_desired) {
  if (!g.directional_x0_hat) return g.x0_hat;
  return v_desired >= 0.0 ? g.x0_hat : -g.x0_hat;
}

BodyTwist CorrectOdometry(const BodyTwist& odometry, const SlipState& estimate,
                          const ControllerGains& g) {
  return {odometry.v_x * (1.0 - estimate.s_v), odometry.v_y,
          odometry.omega - estimate.sigma_v / g.x0_comp};
}

SlidingModeController::SlidingModeController(
    const ControllerGains& gains, const UncertaintyEnvelope& envelope)
    : gains_(gains), envelope_(envelope) {}

absl::StatusOr<ControlOutput> SlidingModeController::Step(
    const DesiredState& desired, const Pose2D& pose, const BodyTwist& odometry,
    const std::optional<SlipState>& slip_estimate) const {
  const DynamicsParams& model = envelope_.nominal;
  ControllerGains g = gains_;
  g.x0_hat = EffectiveIcrOffset(gains_, desired.v);
  const double x0 = g.x0_hat;
  const BodyTwist twist = slip_estimate.has_value()
                              ? CorrectOdometry(odometry, *slip_estimate, g)
                              : odometry;

  ControlOutput out;
  TrackingErrorState& err = out.errors;
  err.global = ComputeGlobalError(desired.pose, pose);
  err.local = ToLocalError(err.global, pose.theta());
  err.rate = ComputeErrorRates(err.local, twist.v_x, twist.omega, desired, x0);
  err.manifolds = ComputeManifolds(err.local, err.rate, g);

  out.drift = ComputeDriftTerms(err.local, twist.v_x, twist.omega, desired, g,
                                model, x0);
  const EquivalentControl equivalent = ComputeEquivalentControl(
      out.drift, err.local, twist.v_x, twist.omega, g, model);
  const DriftBounds bounds = ComputeDriftBounds(
      err.local, twist.v_x, twist.omega, desired, g, envelope_, x0);
  const ReachingControl reaching =
      ComputeReachingControl(err.manifolds, err.local, g, envelope_, bounds);
  out.regularized = equivalent.regularized;
  out.along_layer_advisory_ok =
      g.gamma1 <= AlongTrackLayerBound(err.local.along, g);

  CommandPair& cmd = out.command;
  cmd.v_r = equivalent.v + reaching.v;
  cmd.omega_r = equivalent.omega + reaching.omega;
  VelocityCommand sent;
  if (slip_estimate.has_value()) {
    absl::StatusOr<VelocityCommand> compensated =
        Compensate(cmd.v_r, cmd.omega_r, *slip_estimate, g);
    if (!compensated.ok()) return compensated.status();
    sent = *compensated;
  } else {
    sent = SaturateCommand(cmd.v_r, cmd.omega_r, g);
  }
  cmd.v_c = sent.v;
  cmd.omega_c = sent.omega;

  if (!std::isfinite(cmd.v_r) || !std::isfinite(cmd.omega_r) ||
      !std::isfinite(cmd.v_c) || !std::isfinite(cmd.omega_c)) {
    return absl::InternalError("controller produced a non-finite command");
  }
  return out;
}

}  // namespace ssmr
