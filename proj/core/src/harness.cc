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

#include "ssmr/harness.h"

#include <algorithm>
#include <atomic>
#include <map>
#include <sstream>
#include <system_error>
#include <thread>

#include "absl/strings/match.h"
#include "absl/strings/numbers.h"
#include "absl/strings/str_cat.h"
#include "absl/strings/str_format.h"
#include "absl/strings/str_split.h"
#include "json.hpp"
#include "ssmr/record_io.h"

namespace ssmr {
namespace {

using nlohmann::ordered_json;

ordered_json MetricsJson(const MetricsSummary& m) {
  return {{"mean_dis_cm", m.mean_dis},
          {"rms_dis_cm", m.rms_dis},
          {"mean_abs_e_theta_deg", m.mean_abs_e_theta},
          {"rms_e_theta_deg", m.rms_e_theta}};
}

ordered_json ConfigJson(const HarnessConfig& config) {
  ordered_json j = ordered_json::object();
  for (absl::string_view line : absl::StrSplit(FormatConfig(config), '\n',
                                              absl::SkipEmpty())) {
    const std::size_t eq = line.find(" = ");
    const absl::string_view key = line.substr(0, eq);
    // Output location and parallelism do not affect results.
    if (key == "out" || key == "jobs") continue;
    j[std::string(key)] = std::string(line.substr(eq + 3));
  }
  return j;
}

absl::Status EnsureDirectory(const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) {
    return absl::UnavailableError(
        absl::StrFormat("cannot create %s: %s", dir.string(), ec.message()));
  }
  return absl::OkStatus();
}

int Fail(std::ostream& err, int code, absl::string_view message) {
  err << "error: " << message << "\n";
  return code;
}

// Gain conditions of every profile; prints them and reports whether all pass.
bool ReportGains(const HarnessConfig& config, std::ostream& out) {
  bool ok = true;
  for (const ControllerProfile& profile : config.profiles) {
    const std::vector<GainFinding> findings = ValidateGains(profile.gains);
    if (findings.empty()) {
      out << profile.name << ": all gain conditions hold\n";
      continue;
    }
    ok = false;
    for (const GainFinding& f : findings) {
      out << profile.name << ": violated " << f.condition << ": " << f.message
          << "\n";
    }
  }
  return ok;
}

struct ParsedStem {
  TrajectoryKind kind;
  int index;
};

std::optional<ParsedStem> ParseStem(std::string_view stem) {
  const std::size_t us = stem.rfind('_');
  if (us == std::string_view::npos) return std::nullopt;
  absl::StatusOr<TrajectoryKind> kind = ParseTrajectoryKind(stem.substr(0, us));
  int index;
  if (!kind.ok() || !absl::SimpleAtoi(std::string(stem.substr(us + 1)), &index)) {
    return std::nullopt;
  }
  return ParsedStem{*kind, index};
}

absl::StatusOr<std::vector<RunSummary>> SummarizeDirectory(
    const std::filesystem::path& dir) {
  std::error_code ec;
  if (!std::filesystem::is_directory(dir, ec)) {
    return absl::NotFoundError(
        absl::StrFormat("%s is not a directory", dir.string()));
  }
  std::vector<std::pair<ParsedStem, std::filesystem::path>> files;
  for (const auto& entry : std::filesystem::directory_iterator(dir)) {
    if (entry.path().extension() != ".csv") continue;
    std::optional<ParsedStem> stem = ParseStem(entry.path().stem().string());
    if (!stem) continue;
    files.push_back({*stem, entry.path()});
  }
  std::sort(files.begin(), files.end(), [](const auto& a, const auto& b) {
    return std::pair(a.first.kind, a.first.index) <
           std::pair(b.first.kind, b.first.index);
  });
  std::vector<RunSummary> runs;
  for (const auto& [stem, path] : files) {
    absl::StatusOr<ExperimentRecord> record = ReadRecordCsv(path);
    if (!record.ok()) {
      return absl::InvalidArgumentError(
          absl::StrFormat("%s: %s", path.string(), record.status().message()));
    }
    absl::StatusOr<MetricsSummary> metrics = Summarize(*record);
    if (!metrics.ok()) {
      return absl::InvalidArgumentError(
          absl::StrFormat("%s: %s", path.string(), metrics.status().message()));
    }
    runs.push_back({std::string(TrajectoryName(stem.kind)), stem.index, *metrics});
  }
  if (runs.empty()) {
    return absl::NotFoundError(
        absl::StrFormat("no record CSVs in %s", dir.string()));
  }
  return runs;
}

ordered_json ComparisonJson(const Comparison& c) {
  ordered_json rows = ordered_json::array();
  for (const ComparisonRow& r : c.rows) {
    rows.push_back({{"trajectory", r.trajectory},
                    {"runs", r.runs},
                    {"smc", MetricsJson(r.baseline)},
                    {"smc_ss", MetricsJson(r.treated)},
                    {"improvement_percent", MetricsJson(r.improvement)}});
  }
  const SignificanceResult& s = c.significance;
  ordered_json sig = {
      {"far_statistic", s.far.statistic},
      {"far_p_value", s.far.p_value()},
      {"far_p_chi_square", s.far.p_chi_square},
      {"far_p_permutation", s.far.p_permutation
                                ? ordered_json(*s.far.p_permutation)
                                : ordered_json(nullptr)},
      {"degenerate", s.far.degenerate},
      {"posthoc_raw_p", s.posthoc_raw_p},
      {"finner_adjusted_p", s.finner_adjusted_p},
      {"alpha", s.alpha},
      {"significant", s.significant}};
  return {{"rows", rows}, {"significance", sig}};
}

// Threads on which to run `count` jobs.
std::size_t WorkerCount(int jobs, std::size_t count) {
  std::size_t workers = jobs > 0 ? static_cast<std::size_t>(jobs)
                                 : std::max(1u, std::thread::hardware_concurrency());
  return std::max<std::size_t>(1, std::min(workers, count));
}

}  // namespace

int ExitCodeFor(const absl::Status& status) {
  switch (status.code()) {
    case absl::StatusCode::kOk:
      return kExitOk;
    case absl::StatusCode::kInvalidArgument:
    case absl::StatusCode::kFailedPrecondition:
    case absl::StatusCode::kNotFound:
      return kExitConfigError;
    default:
      return kExitNumericalFailure;
  }
}

std::vector<absl::StatusOr<ExperimentRecord>> RunExperiments(
    std::span<const ExperimentConfig> configs, int jobs) {
  std::vector<absl::StatusOr<ExperimentRecord>> results(
      configs.size(), absl::UnknownError("not run"));
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < configs.size(); i = next++) {
      results[i] = RunExperiment(configs[i]);
    }
  };
  const std::size_t workers = WorkerCount(jobs, configs.size());
  if (workers == 1) {
    worker();
    return results;
  }
  std::vector<std::jthread> pool;
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(worker);
  pool.clear();  // joins
  return results;
}

absl::StatusOr<HarnessConfig> LoadHarnessConfig(const LoadOptions& options) {
  HarnessConfig config = options.paper_preset ? PaperPreset() : DefaultConfig();
  if (options.config_path) {
    absl::StatusOr<std::string> text = ReadFile(*options.config_path);
    if (!text.ok()) return absl::InvalidArgumentError(text.status().message());
    if (absl::Status s = ApplyConfigText(config, *text); !s.ok()) {
      return absl::InvalidArgumentError(absl::StrFormat(
          "%s: %s", options.config_path->string(), s.message()));
    }
  }
  if (absl::Status s = ApplyEnvironment(config, options.env); !s.ok()) return s;
  if (options.out_dir) config.out_dir = *options.out_dir;
  if (options.jobs) config.jobs = *options.jobs;
  if (options.seed) config.seed = *options.seed;
  if (absl::Status s = ValidateConfig(config); !s.ok()) return s;
  return config;
}

std::string RunStem(TrajectoryKind kind, int index) {
  return absl::StrCat(std::string(TrajectoryName(kind)), "_", index);
}

int CmdRun(const HarnessConfig& config, std::ostream& out, std::ostream& err) {
  if (absl::Status s = ValidateConfig(config); !s.ok()) {
    return Fail(err, kExitConfigError, s.message());
  }
  std::ostringstream gains_report;
  if (!ReportGains(config, gains_report)) {
    err << gains_report.str();
    return Fail(err, kExitInfeasibleGains, "infeasible gains");
  }

  const std::vector<RunPlan> plans = PlanRuns(config);
  std::vector<ExperimentConfig> experiments;
  for (const RunPlan& p : plans) experiments.push_back(p.experiment);
  std::vector<absl::StatusOr<ExperimentRecord>> records =
      RunExperiments(experiments, config.jobs);
  for (std::size_t i = 0; i < records.size(); ++i) {
    if (!records[i].ok()) {
      const RunPlan& p = plans[i];
      return Fail(err, ExitCodeFor(records[i].status()),
                  absl::StrFormat("%s %s: %s", config.profiles[p.profile].name,
                                  RunStem(p.kind, p.index),
                                  records[i].status().message()));
    }
  }

  const std::filesystem::path root(config.out_dir);
  for (std::size_t profile = 0; profile < config.profiles.size(); ++profile) {
    const std::filesystem::path dir = root / config.profiles[profile].name;
    if (absl::Status s = EnsureDirectory(dir); !s.ok()) {
      return Fail(err, kExitConfigError, s.message());
    }
    ordered_json runs = ordered_json::array();
    for (std::size_t i = 0; i < plans.size(); ++i) {
      const RunPlan& p = plans[i];
      if (p.profile != profile) continue;
      const std::string stem = RunStem(p.kind, p.index);
      if (absl::Status s = WriteRecordCsv(*records[i], dir / (stem + ".csv"));
          !s.ok()) {
        return Fail(err, kExitConfigError, s.message());
      }
      const DynamicsParams& c = records[i]->plant_params;
      runs.push_back(
          {{"file", stem + ".csv"},
           {"trajectory", std::string(TrajectoryName(p.kind))},
           {"index", p.index},
           {"rows", records[i]->rows.size()},
           {"seeds",
            {{"slip", p.experiment.slip.seed},
             {"estimator", p.experiment.estimator.seed},
             {"plant", p.experiment.plant.seed}}},
           {"plant_params",
            {{"c1", c.c1}, {"c2", c.c2}, {"c3", c.c3}, {"c4", c.c4},
             {"c5", c.c5}, {"c6", c.c6}}},
           {"metrics", MetricsJson(*Summarize(*records[i]))}});
    }
    const ordered_json summary = {{"profile", config.profiles[profile].name},
                                  {"compensation", config.profiles[profile].compensation},
                                  {"config", ConfigJson(config)},
                                  {"runs", runs}};
    if (absl::Status s = WriteFileAtomic(dir / "summary.json", summary.dump(2) + "\n");
        !s.ok()) {
      return Fail(err, kExitConfigError, s.message());
    }
    out << "wrote " << runs.size() << " records to " << dir.string() << "\n";
  }
  return kExitOk;
}

int CmdCompare(const std::filesystem::path& baseline_dir,
               const std::filesystem::path& treated_dir,
               const std::filesystem::path& out_dir, std::ostream& out,
               std::ostream& err) {
  absl::StatusOr<std::vector<RunSummary>> baseline =
      SummarizeDirectory(baseline_dir);
  if (!baseline.ok()) return Fail(err, kExitConfigError, baseline.status().message());
  absl::StatusOr<std::vector<RunSummary>> treated = SummarizeDirectory(treated_dir);
  if (!treated.ok()) return Fail(err, kExitConfigError, treated.status().message());
  absl::StatusOr<Comparison> comparison = Compare(*baseline, *treated);
  if (!comparison.ok()) {
    return Fail(err, kExitConfigError, comparison.status().message());
  }
  if (absl::Status s = EnsureDirectory(out_dir); !s.ok()) {
    return Fail(err, kExitConfigError, s.message());
  }
  const std::string markdown = FormatComparisonMarkdown(*comparison);
  if (absl::Status s = WriteFileAtomic(out_dir / "comparison.json",
                                       ComparisonJson(*comparison).dump(2) + "\n");
      !s.ok()) {
    return Fail(err, kExitConfigError, s.message());
  }
  if (absl::Status s = WriteFileAtomic(out_dir / "comparison.md", markdown);
      !s.ok()) {
    return Fail(err, kExitConfigError, s.message());
  }
  out << markdown;
  return kExitOk;
}

int CmdValidate(const HarnessConfig& config, std::ostream& out,
                std::ostream& err) {
  if (absl::Status s = ValidateConfig(config); !s.ok()) {
    return Fail(err, kExitConfigError, s.message());
  }
  return ReportGains(config, out) ? kExitOk : kExitInfeasibleGains;
}

int CmdSweep(const HarnessConfig& config, const std::string& key,
             std::span<const std::string> values, std::ostream& out,
             std::ostream& err) {
  if (!IsNumericKey(key)) {
    return Fail(err, kExitConfigError,
                absl::StrFormat("'%s' is not a sweepable numeric key", key));
  }
  if (values.empty()) return Fail(err, kExitConfigError, "empty sweep range");

  std::vector<HarnessConfig> points;
  for (const std::string& value : values) {
    HarnessConfig point = config;
    if (absl::Status s = SetConfigValue(point, key, value); !s.ok()) {
      return Fail(err, kExitConfigError, s.message());
    }
    if (absl::Status s = ValidateConfig(point); !s.ok()) {
      return Fail(err, kExitConfigError,
                  absl::StrFormat("%s = %s: %s", key, value, s.message()));
    }
    std::ostringstream report;
    if (!ReportGains(point, report)) {
      err << report.str();
      return Fail(err, kExitInfeasibleGains,
                  absl::StrFormat("%s = %s: infeasible gains", key, value));
    }
    points.push_back(std::move(point));
  }

  // All grid points share one pool.
  std::vector<ExperimentConfig> experiments;
  std::vector<std::pair<std::size_t, std::size_t>> owner;  // point, profile
  for (std::size_t i = 0; i < points.size(); ++i) {
    for (const RunPlan& p : PlanRuns(points[i])) {
      experiments.push_back(p.experiment);
      owner.push_back({i, p.profile});
    }
  }
  std::vector<absl::StatusOr<ExperimentRecord>> records =
      RunExperiments(experiments, config.jobs);

  const std::size_t profiles = config.profiles.size();
  std::vector<std::vector<MetricsSummary>> sums(
      points.size(), std::vector<MetricsSummary>(profiles));
  std::vector<std::vector<int>> counts(points.size(), std::vector<int>(profiles, 0));
  for (std::size_t r = 0; r < records.size(); ++r) {
    if (!records[r].ok()) {
      return Fail(err, ExitCodeFor(records[r].status()),
                  absl::StrFormat("%s = %s: %s", key, values[owner[r].first],
                                  records[r].status().message()));
    }
    const MetricsSummary m = *Summarize(*records[r]);
    MetricsSummary& s = sums[owner[r].first][owner[r].second];
    s.mean_dis += m.mean_dis;
    s.rms_dis += m.rms_dis;
    s.mean_abs_e_theta += m.mean_abs_e_theta;
    s.rms_e_theta += m.rms_e_theta;
    ++counts[owner[r].first][owner[r].second];
  }

  std::string csv = "value";
  for (const ControllerProfile& p : config.profiles) {
    absl::StrAppend(&csv, ",", p.name, ".mean_dis_cm,", p.name, ".rms_dis_cm,",
                    p.name, ".mean_abs_e_theta_deg,", p.name, ".rms_e_theta_deg");
  }
  csv += "\n";
  for (std::size_t i = 0; i < points.size(); ++i) {
    csv += values[i];
    for (std::size_t p = 0; p < profiles; ++p) {
      const double n = std::max(1, counts[i][p]);
      const MetricsSummary& s = sums[i][p];
      absl::StrAppend(&csv, absl::StrFormat(",%.9g,%.9g,%.9g,%.9g", s.mean_dis / n,
                                            s.rms_dis / n, s.mean_abs_e_theta / n,
                                            s.rms_e_theta / n));
    }
    csv += "\n";
  }
  const std::filesystem::path root(config.out_dir);
  if (absl::Status s = EnsureDirectory(root); !s.ok()) {
    return Fail(err, kExitConfigError, s.message());
  }
  if (absl::Status s = WriteFileAtomic(root / "sweep.csv", csv); !s.ok()) {
    return Fail(err, kExitConfigError, s.message());
  }
  out << csv;
  return kExitOk;
}

}  // namespace ssmr
