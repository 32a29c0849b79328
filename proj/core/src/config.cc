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

#include "ssmr/config.h"

#include <cctype>
#include <cstdio>
#include <cstdlib>
#include <set>

#include "absl/strings/ascii.h"
#include "absl/strings/match.h"
#include "absl/strings/numbers.h"
#include "absl/strings/str_cat.h"
#include "absl/strings/str_format.h"
#include "absl/strings/str_join.h"
#include "absl/strings/str_split.h"
#include "absl/strings/strip.h"

namespace ssmr {
namespace {

struct Field {
  std::string key;
  std::function<absl::Status(HarnessConfig&, absl::string_view)> set;
  std::function<std::string(const HarnessConfig&)> get;
  bool numeric = true;
};

std::string FormatDouble(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

absl::Status BadValue(absl::string_view key, absl::string_view value,
                      absl::string_view expected) {
  return absl::InvalidArgumentError(absl::StrFormat(
      "%s: cannot parse '%s' as %s", key, value, expected));
}

template <typename Access>
Field DoubleField(std::string key, Access access) {
  Field f;
  f.key = key;
  f.set = [key, access](HarnessConfig& c, absl::string_view v) -> absl::Status {
    double parsed;
    if (!absl::SimpleAtod(v, &parsed)) return BadValue(key, v, "a number");
    access(c) = parsed;
    return absl::OkStatus();
  };
  f.get = [access](const HarnessConfig& c) {
    return FormatDouble(access(const_cast<HarnessConfig&>(c)));
  };
  return f;
}

template <typename Access>
Field BoolField(std::string key, Access access) {
  Field f;
  f.key = key;
  f.set = [key, access](HarnessConfig& c, absl::string_view v) -> absl::Status {
    bool parsed;
    if (!absl::SimpleAtob(v, &parsed)) return BadValue(key, v, "a boolean");
    access(c) = parsed;
    return absl::OkStatus();
  };
  f.get = [access](const HarnessConfig& c) {
    return std::string(access(const_cast<HarnessConfig&>(c)) ? "true" : "false");
  };
  f.numeric = false;
  return f;
}

template <typename T, typename Access>
Field IntegerField(std::string key, Access access) {
  Field f;
  f.key = key;
  f.set = [key, access](HarnessConfig& c, absl::string_view v) -> absl::Status {
    T parsed;
    if (!absl::SimpleAtoi(v, &parsed)) return BadValue(key, v, "an integer");
    access(c) = parsed;
    return absl::OkStatus();
  };
  f.get = [access](const HarnessConfig& c) {
    return absl::StrCat(access(const_cast<HarnessConfig&>(c)));
  };
  return f;
}

absl::string_view EstimatorName(EstimatorKind kind) {
  switch (kind) {
    case EstimatorKind::kOracle:
      return "oracle";
    case EstimatorKind::kNoisy:
      return "noisy";
    case EstimatorKind::kDelayedNoisy:
      return "delayed-noisy";
  }
  return "oracle";
}

std::string FormatSpikes(const std::vector<SlipSpike>& spikes) {
  std::vector<std::string> parts;
  for (const SlipSpike& s : spikes) {
    parts.push_back(absl::StrCat(FormatDouble(s.t_start), ":",
                                 FormatDouble(s.duration), ":",
                                 FormatDouble(s.s_v), ":",
                                 FormatDouble(s.sigma_v)));
  }
  return absl::StrJoin(parts, ";");
}

absl::StatusOr<std::vector<SlipSpike>> ParseSpikes(absl::string_view text) {
  std::vector<SlipSpike> spikes;
  for (absl::string_view part : absl::StrSplit(text, ';', absl::SkipWhitespace())) {
    std::vector<absl::string_view> fields = absl::StrSplit(part, ':');
    double v[4];
    if (fields.size() != 4) {
      return BadValue("slip.spikes", part, "t_start:duration:s_v:sigma_v");
    }
    for (int i = 0; i < 4; ++i) {
      if (!absl::SimpleAtod(fields[i], &v[i])) {
        return BadValue("slip.spikes", part, "t_start:duration:s_v:sigma_v");
      }
    }
    spikes.push_back({v[0], v[1], v[2], v[3]});
  }
  return spikes;
}

void AddTrajectoryFields(std::vector<Field>& fields) {
  for (std::size_t i = 0; i < 3; ++i) {
    const std::string prefix = absl::StrCat(
        "trajectory.", std::string(TrajectoryName(static_cast<TrajectoryKind>(i))), ".");
    fields.push_back(IntegerField<int>(
        prefix + "runs", [i](HarnessConfig& c) -> int& { return c.trajectories[i].runs; }));
    fields.push_back(DoubleField(prefix + "duration", [i](HarnessConfig& c) -> double& {
      return c.trajectories[i].duration;
    }));
  }
}

void AddGainFields(std::vector<Field>& fields, const std::string& prefix,
                   std::vector<std::size_t> profiles) {
  struct GainDouble {
    const char* name;
    double ControllerGains::*member;
  };
  static constexpr GainDouble kDoubles[] = {
      {"lambda1", &ControllerGains::lambda1},
      {"lambda2", &ControllerGains::lambda2},
      {"kbar1", &ControllerGains::kbar1},
      {"kbar2", &ControllerGains::kbar2},
      {"gamma1", &ControllerGains::gamma1},
      {"gamma2", &ControllerGains::gamma2},
      {"x0_hat", &ControllerGains::x0_hat},
      {"x0_reach", &ControllerGains::x0_reach},
      {"v_max", &ControllerGains::v_max},
      {"omega_max", &ControllerGains::omega_max},
      {"x0_comp", &ControllerGains::x0_comp},
      {"singular_band", &ControllerGains::singular_band},
      {"reach_denominator_floor", &ControllerGains::reach_denominator_floor},
      {"drift_bound_margin", &ControllerGains::drift_bound_margin},
      {"slip_cap", &ControllerGains::slip_cap},
  };
  // A key shared by several profiles writes all of them and reads the first.
  for (const GainDouble& g : kDoubles) {
    const auto member = g.member;
    Field f;
    f.key = prefix + g.name;
    f.set = [key = f.key, member, profiles](HarnessConfig& c,
                                            absl::string_view v) -> absl::Status {
      double parsed;
      if (!absl::SimpleAtod(v, &parsed)) return BadValue(key, v, "a number");
      for (std::size_t p : profiles) c.profiles[p].gains.*member = parsed;
      return absl::OkStatus();
    };
    f.get = [member, profiles](const HarnessConfig& c) {
      return FormatDouble(c.profiles[profiles.front()].gains.*member);
    };
    fields.push_back(std::move(f));
  }
  struct GainBool {
    const char* name;
    bool ControllerGains::*member;
  };
  static constexpr GainBool kBools[] = {
      {"directional_x0_hat", &ControllerGains::directional_x0_hat},
      {"use_sat", &ControllerGains::use_sat},
  };
  for (const GainBool& g : kBools) {
    const auto member = g.member;
    Field f;
    f.key = prefix + g.name;
    f.set = [key = f.key, member, profiles](HarnessConfig& c,
                                            absl::string_view v) -> absl::Status {
      bool parsed;
      if (!absl::SimpleAtob(v, &parsed)) return BadValue(key, v, "a boolean");
      for (std::size_t p : profiles) c.profiles[p].gains.*member = parsed;
      return absl::OkStatus();
    };
    f.get = [member, profiles](const HarnessConfig& c) {
      return std::string(c.profiles[profiles.front()].gains.*member ? "true"
                                                                   : "false");
    };
    f.numeric = false;
    fields.push_back(std::move(f));
  }
  if (profiles.size() == 1) {
    const std::size_t p = profiles.front();
    fields.push_back(BoolField(prefix + "compensation", [p](HarnessConfig& c) -> bool& {
      return c.profiles[p].compensation;
    }));
  }
}

std::vector<Field> BuildRegistry() {
  std::vector<Field> fields;
  fields.push_back(IntegerField<std::uint64_t>(
      "seed", [](HarnessConfig& c) -> std::uint64_t& { return c.seed; }));
  fields.push_back(DoubleField("dt", [](HarnessConfig& c) -> double& { return c.dt; }));
  fields.push_back(IntegerField<int>("substeps", [](HarnessConfig& c) -> int& { return c.substeps; }));
  fields.push_back(IntegerField<int>("jobs", [](HarnessConfig& c) -> int& { return c.jobs; }));
  {
    Field f;
    f.key = "out";
    f.set = [](HarnessConfig& c, absl::string_view v) {
      c.out_dir = std::string(v);
      return absl::OkStatus();
    };
    f.get = [](const HarnessConfig& c) { return c.out_dir; };
    f.numeric = false;
    fields.push_back(std::move(f));
  }
  AddTrajectoryFields(fields);

  {
    Field f;
    f.key = "slip.kind";
    f.set = [](HarnessConfig& c, absl::string_view v) -> absl::Status {
      absl::StatusOr<SlipProcessKind> kind = ParseSlipProcessKind(std::string_view(v.data(), v.size()));
      if (!kind.ok()) return kind.status();
      c.slip.kind = *kind;
      return absl::OkStatus();
    };
    f.get = [](const HarnessConfig& c) {
      return std::string(SlipProcessName(c.slip.kind));
    };
    f.numeric = false;
    fields.push_back(std::move(f));
  }
  fields.push_back(DoubleField("slip.mean_slip", [](HarnessConfig& c) -> double& { return c.slip.mean_slip; }));
  fields.push_back(DoubleField("slip.slip_sigma", [](HarnessConfig& c) -> double& { return c.slip.slip_sigma; }));
  fields.push_back(DoubleField("slip.skid_sigma", [](HarnessConfig& c) -> double& { return c.slip.skid_sigma; }));
  fields.push_back(DoubleField("slip.correlation_time", [](HarnessConfig& c) -> double& { return c.slip.correlation_time; }));
  fields.push_back(DoubleField("slip.cap", [](HarnessConfig& c) -> double& { return c.slip.slip_cap; }));
  {
    Field f;
    f.key = "slip.spikes";
    f.set = [](HarnessConfig& c, absl::string_view v) -> absl::Status {
      absl::StatusOr<std::vector<SlipSpike>> spikes = ParseSpikes(v);
      if (!spikes.ok()) return spikes.status();
      c.slip.spikes = *std::move(spikes);
      return absl::OkStatus();
    };
    f.get = [](const HarnessConfig& c) { return FormatSpikes(c.slip.spikes); };
    f.numeric = false;
    fields.push_back(std::move(f));
  }

  {
    Field f;
    f.key = "estimator.kind";
    f.set = [](HarnessConfig& c, absl::string_view v) -> absl::Status {
      for (EstimatorKind k : {EstimatorKind::kOracle, EstimatorKind::kNoisy,
                              EstimatorKind::kDelayedNoisy}) {
        if (v == EstimatorName(k)) {
          c.estimator.kind = k;
          return absl::OkStatus();
        }
      }
      return BadValue("estimator.kind", v, "oracle, noisy or delayed-noisy");
    };
    f.get = [](const HarnessConfig& c) {
      return std::string(EstimatorName(c.estimator.kind));
    };
    f.numeric = false;
    fields.push_back(std::move(f));
  }
  fields.push_back(DoubleField("estimator.slip_mae", [](HarnessConfig& c) -> double& { return c.estimator.slip_mae_target; }));
  fields.push_back(DoubleField("estimator.skid_mae", [](HarnessConfig& c) -> double& { return c.estimator.skid_mae_target; }));
  fields.push_back(DoubleField("estimator.latency", [](HarnessConfig& c) -> double& { return c.estimator.latency; }));
  fields.push_back(DoubleField("estimator.rate", [](HarnessConfig& c) -> double& { return c.estimator.rate; }));

  fields.push_back(DoubleField("dynamics.c1", [](HarnessConfig& c) -> double& { return c.envelope.nominal.c1; }));
  fields.push_back(DoubleField("dynamics.c2", [](HarnessConfig& c) -> double& { return c.envelope.nominal.c2; }));
  fields.push_back(DoubleField("dynamics.c3", [](HarnessConfig& c) -> double& { return c.envelope.nominal.c3; }));
  fields.push_back(DoubleField("dynamics.c4", [](HarnessConfig& c) -> double& { return c.envelope.nominal.c4; }));
  fields.push_back(DoubleField("dynamics.c5", [](HarnessConfig& c) -> double& { return c.envelope.nominal.c5; }));
  fields.push_back(DoubleField("dynamics.c6", [](HarnessConfig& c) -> double& { return c.envelope.nominal.c6; }));
  fields.push_back(DoubleField("dynamics.fraction", [](HarnessConfig& c) -> double& { return c.envelope.fraction; }));

  fields.push_back(DoubleField("plant.icr_offset", [](HarnessConfig& c) -> double& { return c.plant.icr_offset; }));
  fields.push_back(BoolField("plant.perturbed", [](HarnessConfig& c) -> bool& { return c.plant.perturbed; }));

  fields.push_back(DoubleField("initial.x", [](HarnessConfig& c) -> double& { return c.initial.x; }));
  fields.push_back(DoubleField("initial.y", [](HarnessConfig& c) -> double& { return c.initial.y; }));
  fields.push_back(DoubleField("initial.theta", [](HarnessConfig& c) -> double& { return c.initial.theta; }));

  AddGainFields(fields, "controller.", {0, 1});
  AddGainFields(fields, absl::StrCat(kSmcProfile, "."), {0});
  AddGainFields(fields, absl::StrCat(kSmcSsProfile, "."), {1});
  return fields;
}

const std::vector<Field>& Registry() {
  static const std::vector<Field>* registry =
      new std::vector<Field>(BuildRegistry());
  return *registry;
}

const Field* FindField(absl::string_view key) {
  for (const Field& f : Registry()) {
    if (f.key == key) return &f;
  }
  return nullptr;
}

}  // namespace

HarnessConfig DefaultConfig() {
  HarnessConfig c;
  for (std::size_t i = 0; i < c.trajectories.size(); ++i) {
    const TrajectoryKind kind = static_cast<TrajectoryKind>(i);
    c.trajectories[i] = {kind, DefaultDuration(kind), 1};
  }
  c.profiles[0] = {kSmcProfile, ControllerGains{}, false};
  c.profiles[1] = {kSmcSsProfile, ControllerGains{}, true};
  return c;
}

HarnessConfig PaperPreset() {
  HarnessConfig c = DefaultConfig();
  c.trajectories[0].runs = 3;
  c.trajectories[1].runs = 3;
  c.trajectories[2].runs = 2;
  c.slip.kind = SlipProcessKind::kSmoothRandom;
  c.slip.mean_slip = 0.2;
  c.slip.slip_sigma = 0.05;
  c.slip.skid_sigma = 0.02;
  c.slip.correlation_time = 1.0;
  c.slip.spikes = {{0.0, 2.0, 0.7, 0.0}};
  c.estimator.kind = EstimatorKind::kOracle;
  c.plant.perturbed = true;
  return c;
}

std::vector<std::string> ConfigKeys() {
  std::vector<std::string> keys;
  for (const Field& f : Registry()) keys.push_back(f.key);
  return keys;
}

bool IsNumericKey(absl::string_view key) {
  const Field* f = FindField(key);
  return f != nullptr && f->numeric;
}

absl::Status SetConfigValue(HarnessConfig& config, absl::string_view key,
                            absl::string_view value) {
  const Field* f = FindField(key);
  if (f == nullptr) {
    return absl::InvalidArgumentError(absl::StrFormat("unknown key '%s'", key));
  }
  return f->set(config, absl::StripAsciiWhitespace(value));
}

absl::StatusOr<std::string> GetConfigValue(const HarnessConfig& config,
                                           absl::string_view key) {
  const Field* f = FindField(key);
  if (f == nullptr) {
    return absl::InvalidArgumentError(absl::StrFormat("unknown key '%s'", key));
  }
  return f->get(config);
}

absl::Status ApplyConfigText(HarnessConfig& config, absl::string_view text) {
  std::set<std::string, std::less<>> seen;
  int line_number = 0;
  for (absl::string_view line : absl::StrSplit(text, '\n')) {
    ++line_number;
    if (std::size_t hash = line.find('#'); hash != absl::string_view::npos) {
      line = line.substr(0, hash);
    }
    line = absl::StripAsciiWhitespace(line);
    if (line.empty()) continue;
    const std::size_t eq = line.find('=');
    if (eq == absl::string_view::npos) {
      return absl::InvalidArgumentError(
          absl::StrFormat("line %d: expected 'key = value'", line_number));
    }
    const absl::string_view key = absl::StripAsciiWhitespace(line.substr(0, eq));
    if (!seen.insert(std::string(key)).second) {
      return absl::InvalidArgumentError(
          absl::StrFormat("line %d: duplicate key '%s'", line_number, key));
    }
    if (absl::Status s = SetConfigValue(config, key, line.substr(eq + 1));
        !s.ok()) {
      return absl::InvalidArgumentError(
          absl::StrFormat("line %d: %s", line_number, s.message()));
    }
  }
  return absl::OkStatus();
}

std::string EnvironmentName(absl::string_view key) {
  std::string name = "SSMR_";
  for (char ch : key) {
    name += (ch == '.' || ch == '-')
                ? '_'
                : static_cast<char>(std::toupper(static_cast<unsigned char>(ch)));
  }
  return name;
}

absl::Status ApplyEnvironment(HarnessConfig& config, const EnvLookup& lookup) {
  for (const Field& f : Registry()) {
    const std::string name = EnvironmentName(f.key);
    const char* value = lookup ? lookup(name.c_str()) : std::getenv(name.c_str());
    if (value == nullptr) continue;
    if (absl::Status s = f.set(config, absl::StripAsciiWhitespace(value));
        !s.ok()) {
      return absl::InvalidArgumentError(
          absl::StrFormat("%s: %s", name, s.message()));
    }
  }
  return absl::OkStatus();
}

std::string FormatConfig(const HarnessConfig& config) {
  std::string out;
  for (const Field& f : Registry()) {
    // The shared gain keys only mirror the smc profile.
    if (absl::StartsWith(f.key, "controller.")) continue;
    absl::StrAppend(&out, f.key, " = ", f.get(config), "\n");
  }
  return out;
}

absl::Status ValidateConfig(const HarnessConfig& config) {
  if (!(config.dt > 0.0)) return absl::InvalidArgumentError("dt must be > 0");
  if (config.substeps < 1) {
    return absl::InvalidArgumentError("substeps must be >= 1");
  }
  if (config.jobs < 0) return absl::InvalidArgumentError("jobs must be >= 0");
  if (config.out_dir.empty()) {
    return absl::InvalidArgumentError("out must not be empty");
  }
  int total = 0;
  for (const TrajectoryPlan& plan : config.trajectories) {
    if (plan.runs < 0) {
      return absl::InvalidArgumentError(absl::StrFormat(
          "trajectory.%s.runs must be >= 0", std::string(TrajectoryName(plan.kind))));
    }
    if (!(plan.duration > 0.0)) {
      return absl::InvalidArgumentError(absl::StrFormat(
          "trajectory.%s.duration must be > 0", std::string(TrajectoryName(plan.kind))));
    }
    total += plan.runs;
  }
  if (total == 0) return absl::InvalidArgumentError("no runs configured");
  if (absl::Status s = ValidateSlipProcess(config.slip); !s.ok()) return s;
  if (absl::Status s = ValidateEstimatorConfig(config.estimator); !s.ok()) {
    return s;
  }
  if (absl::Status s = ValidateEnvelope(config.envelope); !s.ok()) return s;
  return absl::OkStatus();
}

std::uint64_t SplitMix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t DeriveSeed(std::uint64_t master, TrajectoryKind kind, int index,
                         SeedStream stream) {
  std::uint64_t h = SplitMix64(master);
  h = SplitMix64(h ^ static_cast<std::uint64_t>(kind));
  h = SplitMix64(h ^ static_cast<std::uint64_t>(index));
  return SplitMix64(h ^ static_cast<std::uint64_t>(stream));
}

std::vector<RunPlan> PlanRuns(const HarnessConfig& config) {
  std::vector<RunPlan> plans;
  for (std::size_t p = 0; p < config.profiles.size(); ++p) {
    const ControllerProfile& profile = config.profiles[p];
    for (const TrajectoryPlan& plan : config.trajectories) {
      for (int index = 0; index < plan.runs; ++index) {
        RunPlan run;
        run.kind = plan.kind;
        run.index = index;
        run.profile = p;
        ExperimentConfig& e = run.experiment;
        e.trajectory = {plan.kind, plan.duration};
        e.slip = config.slip;
        e.slip.seed = DeriveSeed(config.seed, plan.kind, index, SeedStream::kSlip);
        e.gains = profile.gains;
        e.compensation = profile.compensation;
        e.estimator = config.estimator;
        e.estimator.seed =
            DeriveSeed(config.seed, plan.kind, index, SeedStream::kEstimator);
        e.envelope = config.envelope;
        e.plant = config.plant;
        e.plant.seed = DeriveSeed(config.seed, plan.kind, index, SeedStream::kPlant);
        e.initial = config.initial;
        e.dt = config.dt;
        e.substeps = config.substeps;
        plans.push_back(std::move(run));
      }
    }
  }
  return plans;
}

}  // namespace ssmr
