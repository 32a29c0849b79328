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

#ifndef SSMR_CONTROLLER_H_
#define SSMR_CONTROLLER_H_

// Sliding-mode trajectory-tracking controller for a skid-steering robot with
// optional vehicle-level slip and skid compensation.
//
// Per tick the controller maps the tracking error into the body frame, forms
// two sliding manifolds s_i = lambda_i * e_i + de_i/dt on the along-track and
// cross-track errors, and sums an equivalent control (holds s_dot = 0 for the
// nominal model) with a reaching control (drives s toward zero against the
// coefficient uncertainty). The optional compensation then rescales the
// linear command by the estimated slip and offsets the angular command by the
// estimated skid before the actuator limits are applied.

#include <optional>
#include <string>
#include <vector>

#include "absl/status/statusor.h"
#include "ssmr/dynamics.h"
#include "ssmr/model.h"

namespace ssmr {

struct ControllerGains {
  double lambda1 = 1.5;   // 1/s
  double lambda2 = 1.2;   // 1/s
  double kbar1 = 5.5;     // reaching gain of s1
  double kbar2 = 2.5;     // reaching gain of s2
  double gamma1 = 0.1;    // boundary-layer half width of s1
  double gamma2 = 0.1;    // boundary-layer half width of s2
  // m, ICR offset assumed by the control law while the reference moves
  // forward. With directional_x0_hat the sign is mirrored for reverse motion.
  double x0_hat = -0.05;
  bool directional_x0_hat = true;
  double x0_reach = 0.15; // m, positive ICR bound in the reaching gain
  double v_max = 0.5;     // m/s
  double omega_max = 0.3; // rad/s
  double x0_comp = 0.1;   // m, ICR offset used to convert skid into yaw rate
  bool use_sat = true;    // false: discontinuous sign reaching law

  // Below this |x0_hat - e1| the equivalent control uses its analytic limit.
  double singular_band = 1e-4;
  // Floor on the reaching-gain denominator x0_reach - |e1|.
  double reach_denominator_floor = 1e-2;
  // Relative margin applied to the per-tick drift bounds.
  double drift_bound_margin = 0.1;
  double slip_cap = kDefaultSlipCap;
};

// A violated stability condition. `condition` is a stable identifier.
struct GainFinding {
  std::string condition;
  std::string message;
};

inline constexpr char kManifoldSlopeCondition[] = "manifold-slope";
inline constexpr char kBoundaryLayerCondition[] = "boundary-layer-width";
inline constexpr char kPositivityCondition[] = "positive-gains";

// Static feasibility checks. An empty result means the gains are admissible.
std::vector<GainFinding> ValidateGains(const ControllerGains& gains);

// Upper bound on gamma1 that keeps s1/e1 stable inside the boundary layer at
// the given along-track error. Degenerates to 0 at e1 = x0_hat = 0, so it is
// only evaluated as a per-tick advisory.
double AlongTrackLayerBound(double e1, const ControllerGains& gains);

struct GlobalError {
  double x = 0.0;
  double y = 0.0;
  double theta = 0.0;
};

// Body-frame tracking error: along-track, cross-track and heading.
struct LocalError {
  double along = 0.0;
  double cross = 0.0;
  double heading = 0.0;
};

struct LocalErrorRate {
  double along = 0.0;
  double cross = 0.0;
  double heading = 0.0;
};

struct ManifoldValues {
  double s1 = 0.0;
  double s2 = 0.0;
};

struct DesiredState {
  Pose2D pose;
  double v = 0.0;          // m/s
  double v_dot = 0.0;      // m/s^2
  double omega = 0.0;      // rad/s
  double omega_dot = 0.0;  // rad/s^2
};

struct TrackingErrorState {
  GlobalError global;
  LocalError local;
  LocalErrorRate rate;
  ManifoldValues manifolds;
};

struct CommandPair {
  double v_r = 0.0;      // raw linear command
  double omega_r = 0.0;  // raw angular command
  double v_c = 0.0;      // command sent to the robot
  double omega_c = 0.0;

  friend bool operator==(const CommandPair&, const CommandPair&) = default;
};

GlobalError ComputeGlobalError(const Pose2D& desired, const Pose2D& actual);

LocalError ToLocalError(const GlobalError& error, double theta);

// Reference poses are generated by an ideal robot whose ICR offset is
// kReferenceIcrOffset; `x0` is the offset assumed for the tracked robot.
inline constexpr double kReferenceIcrOffset = 0.0;

LocalErrorRate ComputeErrorRates(const LocalError& eps, double v_x,
                                 double omega, const DesiredState& desired,
                                 double x0,
                                 double x0_ref = kReferenceIcrOffset);

ManifoldValues ComputeManifolds(const LocalError& eps,
                                const LocalErrorRate& rate,
                                const ControllerGains& gains);

// Command-independent parts of the manifold derivatives:
//   s1_dot = h1 + e2 * w_r / c2 - v_r / c1
//   s2_dot = h2 + (x0 - e1) * w_r / c2
struct DriftTerms {
  double h1 = 0.0;
  double h2 = 0.0;
};

DriftTerms ComputeDriftTerms(const LocalError& eps, double v_x, double omega,
                             const DesiredState& desired,
                             const ControllerGains& gains,
                             const DynamicsParams& params, double x0,
                             double x0_ref = kReferenceIcrOffset);

// Partial derivative of h2 with respect to the along-track error. It does not
// depend on x0 or on e1 itself.
double DriftCrossSensitivity(double v_x, double omega,
                             const ControllerGains& gains,
                             const DynamicsParams& params);

// Manifold derivatives for an applied command pair.
ManifoldValues ManifoldRates(const DriftTerms& drift, const LocalError& eps,
                             double v_r, double omega_r,
                             const DynamicsParams& params, double x0);

struct EquivalentControl {
  double v = 0.0;
  double omega = 0.0;
  bool regularized = false;  // true when the analytic limit was used
};

// Command that keeps s_dot = 0 for the nominal model. When |x0_hat - e1| falls
// below gains.singular_band the quotient h2 / (x0_hat - e1) is replaced by its
// limit -dh2/de1, so the output is finite for every finite input.
EquivalentControl ComputeEquivalentControl(const DriftTerms& drift,
                                           const LocalError& eps, double v_x,
                                           double omega,
                                           const ControllerGains& gains,
                                           const DynamicsParams& params);

// Magnitude bounds on h1, h2 over the uncertainty box, including the margin.
struct DriftBounds {
  double h1 = 0.0;
  double h2 = 0.0;
};

DriftBounds ComputeDriftBounds(const LocalError& eps, double v_x, double omega,
                               const DesiredState& desired,
                               const ControllerGains& gains,
                               const UncertaintyEnvelope& envelope, double x0,
                               double x0_ref = kReferenceIcrOffset);

struct ReachingControl {
  double v = 0.0;
  double omega = 0.0;
};

// sat(u) = clamp(u, -1, 1).
double Sat(double u);
// -1, 0 or 1.
double Sign(double u);

ReachingControl ComputeReachingControl(const ManifoldValues& s,
                                       const LocalError& eps,
                                       const ControllerGains& gains,
                                       const UncertaintyEnvelope& envelope,
                                       const DriftBounds& bounds);

// Clamps to [-v_max, v_max] x [-omega_max, omega_max].
VelocityCommand SaturateCommand(double v, double omega,
                                const ControllerGains& gains);

// Slip/skid compensated and saturated command. Fails with OutOfRange
// ("degenerate slip") when the slip estimate exceeds gains.slip_cap.
absl::StatusOr<VelocityCommand> Compensate(double v_r, double omega_r,
                                           const SlipState& estimate,
                                           const ControllerGains& gains);

struct ControlOutput {
  TrackingErrorState errors;
  DriftTerms drift;
  CommandPair command;
  bool regularized = false;
  // False when gamma1 exceeds AlongTrackLayerBound(e1) at this tick.
  bool along_layer_advisory_ok = true;
};

// ICR offset used by the control law for a reference moving at v_desired.
double EffectiveIcrOffset(const ControllerGains& gains, double v_desired);

// Odometry re-expressed through the slip kinematics: v_x * (1 - s_hat) and
// omega - sigma_hat / x0_comp.
BodyTwist CorrectOdometry(const BodyTwist& odometry, const SlipState& estimate,
                          const ControllerGains& gains);

// Stateless controller; Step is a pure function of its arguments.
class SlidingModeController {
 public:
  // `envelope.nominal` is the model used by the equivalent control and
  // `envelope` bounds the reaching control.
  SlidingModeController(const ControllerGains& gains,
                        const UncertaintyEnvelope& envelope);

  // `odometry` supplies the wheel-odometry v_x and omega. When
  // `slip_estimate` is present the odometry is corrected with it and the
  // command is compensated; otherwise the odometry is used as is.
  absl::StatusOr<ControlOutput> Step(
      const DesiredState& desired, const Pose2D& pose,
      const BodyTwist& odometry,
      const std::optional<SlipState>& slip_estimate) const;

  const ControllerGains& gains() const { return gains_; }
  const UncertaintyEnvelope& envelope() const { return envelope_; }

 private:
  ControllerGains gains_;
  UncertaintyEnvelope envelope_;
};

}  // namespace ssmr

#endif  // SSMR_CONTROLLER_H_
