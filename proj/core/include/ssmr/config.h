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

#ifndef SSMR_CONFIG_H_
#define SSMR_CONFIG_H_

// Harness configuration: flat `key = value` text with dotted namespaces.
//
//   # comment
//   seed = 7
//   trajectory.bow.runs = 2
//   smc-ss.gamma2 = 0.2
//
// controller.<gain> sets a gain in both profiles; smc.<gain> and
// smc-ss.<gain> set it in one.
//
// Unknown or repeated keys are rejected. Every key can be overridden from the
// environment as SSMR_<KEY>, with the key upper-cased and '.' and '-' mapped
// to '_' (smc-ss.gamma2 -> SSMR_SMC_SS_GAMMA2).

#include <array>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "absl/strings/string_view.h"
#include "ssmr/simulator.h"

namespace ssmr {

struct TrajectoryPlan {
  TrajectoryKind kind = TrajectoryKind::kStraight;
  double duration = 30.0;  // s
  int runs = 1;
};

struct ControllerProfile {
  std::string name;
  ControllerGains gains;
  bool compensation = false;
};

inline constexpr char kSmcProfile[] = "smc";
inline constexpr char kSmcSsProfile[] = "smc-ss";

// Build from DefaultConfig() or PaperPreset(); a value-initialized config has
// no trajectory plan or profile names.
struct HarnessConfig {
  // Straight, circular, bow.
  std::array<TrajectoryPlan, 3> trajectories;
  // Profiles smc and smc-ss; they differ only in the compensation flag
  // unless their gains are overridden.
  std::array<ControllerProfile, 2> profiles;
  SlipProcessConfig slip;
  EstimatorConfig estimator;
  UncertaintyEnvelope envelope;
  PlantConfig plant;
  InitialOffset initial;
  double dt = 0.01;  // s
  int substeps = 1;
  // Master seed. Per-run slip, estimator and plant seeds derive from it; the
  // seed fields of the sub-configs are ignored.
  std::uint64_t seed = 1;
  std::string out_dir = "out";
  int jobs = 0;  // 0: number of logical processors
};

// One run of every trajectory, zero slip, oracle estimator.
HarnessConfig DefaultConfig();

// Gains at their defaults, runs 3/3/2, smooth-random slip with mean 0.2, skid
// std 0.02 m/s and a 2 s 0.7-slip spike at the start, oracle estimator and
// +-25% plant perturbation.
HarnessConfig PaperPreset();

// All keys in registry order.
std::vector<std::string> ConfigKeys();

// True when the key holds a single number and can be swept.
bool IsNumericKey(absl::string_view key);

absl::Status SetConfigValue(HarnessConfig& config, absl::string_view key,
                            absl::string_view value);

absl::StatusOr<std::string> GetConfigValue(const HarnessConfig& config,
                                           absl::string_view key);

// Applies `key = value` lines in order. Errors name the offending line.
absl::Status ApplyConfigText(HarnessConfig& config, absl::string_view text);

std::string EnvironmentName(absl::string_view key);

using EnvLookup = std::function<const char*(const char*)>;

// Applies SSMR_* overrides found through `lookup` (std::getenv by default).
absl::Status ApplyEnvironment(HarnessConfig& config,
                              const EnvLookup& lookup = {});

// Every key with its current value, one `key = value` line each. Parsing
// the output reproduces the configuration.
std::string FormatConfig(const HarnessConfig& config);

// Checks everything except the gain conditions, which the harness reports
// separately (ValidateGains) because they map to their own exit code.
absl::Status ValidateConfig(const HarnessConfig& config);

std::uint64_t SplitMix64(std::uint64_t x);

enum class SeedStream : std::uint64_t { kSlip = 1, kEstimator = 2, kPlant = 3 };

// Seed of one stream of run `index` on `kind`. Profiles share seeds so SMC
// and SMC-SS runs are paired.
std::uint64_t DeriveSeed(std::uint64_t master, TrajectoryKind kind, int index,
                         SeedStream stream);

struct RunPlan {
  TrajectoryKind kind = TrajectoryKind::kStraight;
  int index = 0;
  std::size_t profile = 0;  // into HarnessConfig::profiles
  ExperimentConfig experiment;
};

// Runs in profile, trajectory, index order.
std::vector<RunPlan> PlanRuns(const HarnessConfig& config);

}  // namespace ssmr

#endif  // SSMR_CONFIG_H_
