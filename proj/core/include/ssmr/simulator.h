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

#ifndef SSMR_SIMULATOR_H_
#define SSMR_SIMULATOR_H_

// Fixed-step closed-loop simulation: reference, ground-truth slip, estimator,
// controller and plant, recorded tick by tick.

#include <cstdint>
#include <vector>

#include "absl/status/statusor.h"
#include "ssmr/controller.h"
#include "ssmr/dynamics.h"
#include "ssmr/estimator.h"
#include "ssmr/slip_process.h"
#include "ssmr/trajectory.h"

namespace ssmr {

struct PlantConfig {
  // ICR offset of the simulated robot. It sets the body lateral velocity
  // (-x0 * rho) and converts the skid velocity into yaw rate.
  double icr_offset = 0.05;
  // When false the plant uses the controller's nominal coefficients.
  bool perturbed = true;
  std::uint64_t seed = 0;
};

// Initial pose offset: actual pose = desired(0) - offset.
struct InitialOffset {
  double x = 0.3;
  double y = 0.1;
  double theta = 0.0;
};

struct ExperimentConfig {
  TrajectorySpec trajectory;
  SlipProcessConfig slip;
  ControllerGains gains;
  bool compensation = false;
  EstimatorConfig estimator;
  UncertaintyEnvelope envelope;
  PlantConfig plant;
  InitialOffset initial;
  double dt = 0.01;  // s, control period
  // RK4 steps per control period; commands and slip are held over the period.
  int substeps = 1;
};

struct ExperimentRow {
  double t = 0.0;
  Pose2D desired;
  Pose2D actual;
  GlobalError global;
  LocalError local;
  ManifoldValues manifolds;
  CommandPair command;
  SlipState truth;
  SlipState estimate;
  double dis = 0.0;
  // Not part of the CSV schema.
  double v_x = 0.0;
  double omega = 0.0;
};

struct ExperimentRecord {
  std::vector<ExperimentRow> rows;
  DynamicsParams plant_params;
  double dt = 0.0;
};

// Fails with InvalidArgument for bad configuration, propagates controller
// errors, and fails with Internal ("numerical abort") when the state becomes
// non-finite.
absl::StatusOr<ExperimentRecord> RunExperiment(const ExperimentConfig& config);

// Re-integrates the plant open loop from the configured initial pose under the
// recorded commands and truth slip, each held for one control period, with
// config.substeps RK4 steps per period. Returns the pose at every tick.
absl::StatusOr<std::vector<Pose2D>> ReplayCommands(
    const ExperimentConfig& config, const ExperimentRecord& record);

}  // namespace ssmr

#endif  // SSMR_SIMULATOR_H_
