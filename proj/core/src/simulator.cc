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

#include "ssmr/simulator.h"

#include <array>
#include <cmath>
#include <optional>

#include "absl/strings/str_format.h"

namespace ssmr {
namespace {

// x, y, unwrapped theta, v_x, omega.
using PlantState = std::array<double, 5>;

struct PlantInput {
  VelocityCommand command;
  SlipState slip;
};

class Plant {
 public:
  Plant(const DynamicsParams& params, double icr_offset)
      : params_(params), icr_offset_(icr_offset) {}

  // Body rotation under skid: the skid velocity is the lateral deficit
  // x0 * (omega - rho), so rho = omega - sigma_v / x0.
  double RealisedYawRate(double omega, double sigma_v) const {
    if (sigma_v == 0.0) return omega;
    return omega - sigma_v / icr_offset_;
  }

  PlantState Rate(const PlantState& q, const PlantInput& in) const {
    const TwistRate twist_rate =
        ComputeTwistDerivative(q[3], q[4], in.command, params_);
    const double xi = q[3] * (1.0 - in.slip.s_v);
    const double rho = RealisedYawRate(q[4], in.slip.sigma_v);
    const double c = std::cos(q[2]);
    const double s = std::sin(q[2]);
    return {xi * c + icr_offset_ * rho * s, xi * s - icr_offset_ * rho * c,
            rho, twist_rate.v_dot, twist_rate.omega_dot};
  }

  PlantState Step(const PlantState& q, const PlantInput& in, double h) const {
    auto axpy = [](const PlantState& a, double scale, const PlantState& b) {
      PlantState out;
      for (std::size_t i = 0; i < out.size(); ++i) out[i] = a[i] + scale * b[i];
      return out;
    };
    const PlantState k1 = Rate(q, in);
    const PlantState k2 = Rate(axpy(q, h / 2, k1), in);
    const PlantState k3 = Rate(axpy(q, h / 2, k2), in);
    const PlantState k4 = Rate(axpy(q, h, k3), in);
    PlantState out;
    for (std::size_t i = 0; i < out.size(); ++i) {
      out[i] = q[i] + h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
    }
    return out;
  }

 private:
  DynamicsParams params_;
  double icr_offset_;
};

bool HasSkid(const SlipProcessConfig& slip) {
  if (slip.kind == SlipProcessKind::kSmoothRandom && slip.skid_sigma > 0.0) {
    return true;
  }
  for (const SlipSpike& spike : slip.spikes) {
    if (spike.sigma_v != 0.0) return true;
  }
  return false;
}

absl::Status ValidateExperiment(const ExperimentConfig& config) {
  if (!(config.dt > 0.0)) return absl::InvalidArgumentError("dt must be > 0");
  if (config.substeps < 1) {
    return absl::InvalidArgumentError("substeps must be >= 1");
  }
  if (!(config.trajectory.duration > 0.0)) {
    return absl::InvalidArgumentError("trajectory duration must be > 0");
  }
  if (std::vector<GainFinding> findings = ValidateGains(config.gains);
      !findings.empty()) {
    return absl::InvalidArgumentError(absl::StrFormat(
        "infeasible gains (%s): %s", findings.front().condition,
        findings.front().message));
  }
  if (absl::Status s = ValidateEnvelope(config.envelope); !s.ok()) return s;
  if (absl::Status s = ValidateSlipProcess(config.slip); !s.ok()) return s;
  if (absl::Status s = ValidateEstimatorConfig(config.estimator); !s.ok()) {
    return s;
  }
  if (HasSkid(config.slip) &&
      std::abs(config.plant.icr_offset) < kIcrOffsetFloor) {
    return absl::FailedPreconditionError(
        "degenerate ICR: skid requires a plant ICR offset above the floor");
  }
  return absl::OkStatus();
}

PlantState InitialState(const Pose2D& start, const InitialOffset& offset) {
  return {start.x() - offset.x, start.y() - offset.y,
          start.theta() - offset.theta, 0.0, 0.0};
}

}  // namespace

absl::StatusOr<ExperimentRecord> RunExperiment(const ExperimentConfig& config) {
  if (absl::Status s = ValidateExperiment(config); !s.ok()) return s;

  absl::StatusOr<ReferenceTrajectory> reference =
      ReferenceTrajectory::Create(config.trajectory, config.dt);
  if (!reference.ok()) return reference.status();

  ExperimentRecord record;
  record.dt = config.dt;
  record.plant_params = config.plant.perturbed
                            ? SampleParams(config.envelope, config.plant.seed)
                            : config.envelope.nominal;
  const Plant plant(record.plant_params, config.plant.icr_offset);
  const SlidingModeController controller(config.gains, config.envelope);
  SlipProcess truth_process(config.slip, config.dt);
  SlipEstimator estimator(config.estimator);

  PlantState q = InitialState(reference->At(0).pose, config.initial);

  const std::size_t ticks = reference->size();
  record.rows.reserve(ticks);
  for (std::size_t k = 0; k < ticks; ++k) {
    const double t = static_cast<double>(k) * config.dt;
    const DesiredState& desired = reference->At(k);
    const Pose2D pose(q[0], q[1], q[2]);
    const SlipState truth = truth_process.AtTick(k);
    // Wheel odometry: the no-slip longitudinal velocity and commanded yaw rate.
    const BodyTwist odometry{q[3], 0.0, q[4]};

    const EstimateSample estimate = estimator.Estimate(truth, t);
    std::optional<SlipState> fed;
    if (config.compensation) fed = estimate.AsSlip();

    absl::StatusOr<ControlOutput> out =
        controller.Step(desired, pose, odometry, fed);
    if (!out.ok()) {
      return absl::Status(out.status().code(),
                          absl::StrFormat("t = %.4f: %s", t,
                                          out.status().message()));
    }

    ExperimentRow row;
    row.t = t;
    row.desired = desired.pose;
    row.actual = pose;
    row.global = out->errors.global;
    row.local = out->errors.local;
    row.manifolds = out->errors.manifolds;
    row.command = out->command;
    row.truth = truth;
    row.estimate = estimate.AsSlip();
    row.dis = std::hypot(row.global.x, row.global.y);
    row.v_x = q[3];
    row.omega = q[4];
    record.rows.push_back(row);

    if (k + 1 == ticks) break;
    const PlantInput input{{out->command.v_c, out->command.omega_c}, truth};
    const double h = config.dt / config.substeps;
    for (int i = 0; i < config.substeps; ++i) q = plant.Step(q, input, h);
    for (double value : q) {
      if (!std::isfinite(value)) {
        return absl::InternalError(absl::StrFormat(
            "numerical abort: non-finite plant state at t = %.4f", t));
      }
    }
  }
  return record;
}

absl::StatusOr<std::vector<Pose2D>> ReplayCommands(
    const ExperimentConfig& config, const ExperimentRecord& record) {
  if (absl::Status s = ValidateExperiment(config); !s.ok()) return s;
  if (record.rows.empty()) return absl::InvalidArgumentError("empty record");
  absl::StatusOr<Pose2D> start =
      DesiredPoseAt(config.trajectory, 0.0, config.dt);
  if (!start.ok()) return start.status();
  const Plant plant(record.plant_params, config.plant.icr_offset);
  PlantState q = InitialState(*start, config.initial);
  const double h = config.dt / config.substeps;
  std::vector<Pose2D> poses;
  poses.reserve(record.rows.size());
  for (std::size_t k = 0; k < record.rows.size(); ++k) {
    poses.emplace_back(q[0], q[1], q[2]);
    if (k + 1 == record.rows.size()) break;
    const ExperimentRow& row = record.rows[k];
    const PlantInput input{{row.command.v_c, row.command.omega_c}, row.truth};
    for (int i = 0; i < config.substeps; ++i) q = plant.Step(q, input, h);
  }
  return poses;
}

}  // namespace ssmr
