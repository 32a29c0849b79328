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

// Command-line front end: ssmr {run|compare|validate|sweep}.

#include <cstdint>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "ssmr/harness.h"

namespace {

struct Flags {
  std::string config;
  std::string preset;
  std::string out;
  int jobs = -1;
  std::int64_t seed = -1;
};

std::optional<ssmr::HarnessConfig> Load(const Flags& flags) {
  ssmr::LoadOptions options;
  options.paper_preset = flags.preset == "paper";
  if (!flags.config.empty()) options.config_path = flags.config;
  if (!flags.out.empty()) options.out_dir = flags.out;
  if (flags.jobs >= 0) options.jobs = flags.jobs;
  if (flags.seed >= 0) options.seed = static_cast<std::uint64_t>(flags.seed);
  absl::StatusOr<ssmr::HarnessConfig> config = ssmr::LoadHarnessConfig(options);
  if (!config.ok()) {
    std::cerr << "error: " << config.status().message() << "\n";
    return std::nullopt;
  }
  return *std::move(config);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Sliding-mode trajectory tracking experiments for skid-steering robots"};
  app.require_subcommand(1);
  Flags flags;
  app.add_option("--config", flags.config, "key = value configuration file");
  app.add_option("--preset", flags.preset, "Built-in configuration")
      ->check(CLI::IsMember({"paper"}));
  app.add_option("--out", flags.out, "Output directory");
  app.add_option("--jobs", flags.jobs, "Worker threads (0: logical processors)")
      ->check(CLI::NonNegativeNumber);
  app.add_option("--seed", flags.seed, "Master seed")->check(CLI::NonNegativeNumber);

  CLI::App* run = app.add_subcommand("run", "Run the configured experiments");
  CLI::App* validate = app.add_subcommand("validate", "Check the gain conditions");
  CLI::App* compare = app.add_subcommand("compare", "Compare two record directories");
  std::string baseline_dir;
  std::string treated_dir;
  compare->add_option("baseline", baseline_dir, "SMC record directory")->required();
  compare->add_option("treated", treated_dir, "SMC-SS record directory")->required();
  CLI::App* sweep = app.add_subcommand("sweep", "Run a one-parameter grid");
  std::string param;
  std::vector<std::string> values;
  sweep->add_option("--param", param, "Numeric configuration key")->required();
  sweep->add_option("--values", values, "Grid values")->delimiter(',');
  for (CLI::App* sub : {run, validate, compare, sweep}) sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return ssmr::kExitConfigError;
  }

  if (*compare) {
    const std::string out = flags.out.empty() ? "." : flags.out;
    return ssmr::CmdCompare(baseline_dir, treated_dir, out, std::cout, std::cerr);
  }
  std::optional<ssmr::HarnessConfig> config = Load(flags);
  if (!config) return ssmr::kExitConfigError;
  if (*run) return ssmr::CmdRun(*config, std::cout, std::cerr);
  if (*validate) return ssmr::CmdValidate(*config, std::cout, std::cerr);
  return ssmr::CmdSweep(*config, param, values, std::cout, std::cerr);
}
