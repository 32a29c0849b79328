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

#ifndef SSMR_HARNESS_H_
#define SSMR_HARNESS_H_

// Batch subcommands behind the command-line tool. Each returns a process exit
// code and writes its report to `out` and diagnostics to `err`.

#include <filesystem>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "absl/status/statusor.h"
#include "ssmr/config.h"
#include "ssmr/metrics.h"
#include "ssmr/simulator.h"

namespace ssmr {

enum ExitCode : int {
  kExitOk = 0,
  kExitInfeasibleGains = 1,
  kExitConfigError = 2,
  kExitNumericalFailure = 3,
};

// Exit code for a failed experiment: configuration-type statuses map to
// kExitConfigError, everything else to kExitNumericalFailure.
int ExitCodeFor(const absl::Status& status);

// Runs independent experiments on `jobs` worker threads (0: one per logical
// processor). Results are in input order and do not depend on `jobs`.
std::vector<absl::StatusOr<ExperimentRecord>> RunExperiments(
    std::span<const ExperimentConfig> configs, int jobs);

struct LoadOptions {
  bool paper_preset = false;
  std::optional<std::filesystem::path> config_path;
  std::optional<std::string> out_dir;
  std::optional<int> jobs;
  std::optional<std::uint64_t> seed;
  EnvLookup env;  // std::getenv when empty
};

// Preset (or defaults), then the config file, then SSMR_* variables, then the
// explicit flag values.
absl::StatusOr<HarnessConfig> LoadHarnessConfig(const LoadOptions& options);

// File stem of a run inside a profile directory, e.g. "circular_2".
std::string RunStem(TrajectoryKind kind, int index);

// Writes <out>/<profile>/<stem>.csv and <out>/<profile>/summary.json for
// every profile. Nothing is written unless every run succeeds.
int CmdRun(const HarnessConfig& config, std::ostream& out, std::ostream& err);

// Reads the record CSVs of two profile directories, pairs them by file stem
// and writes comparison.json and comparison.md into `out_dir`.
int CmdCompare(const std::filesystem::path& baseline_dir,
               const std::filesystem::path& treated_dir,
               const std::filesystem::path& out_dir, std::ostream& out,
               std::ostream& err);

int CmdValidate(const HarnessConfig& config, std::ostream& out,
                std::ostream& err);

// One row per value in sweep.csv under config.out_dir. Every grid point uses
// the same per-run seeds.
int CmdSweep(const HarnessConfig& config, const std::string& key,
             std::span<const std::string> values, std::ostream& out,
             std::ostream& err);

}  // namespace ssmr

#endif  // SSMR_HARNESS_H_
