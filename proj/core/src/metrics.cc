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

#include "ssmr/metrics.h"

#include <cmath>

#include "absl/strings/str_format.h"
#include "ssmr/angles.h"

namespace ssmr {
namespace {

constexpr double kCentimetres = 100.0;
constexpr double kDegrees = 180.0 / kPi;

MetricsSummary Mean(std::span<const RunSummary> runs,
                    const std::string& trajectory) {
  MetricsSummary out;
  int count = 0;
  for (const RunSummary& r : runs) {
    if (trajectory != "all" && r.trajectory != trajectory) continue;
    out.mean_dis += r.metrics.mean_dis;
    out.rms_dis += r.metrics.rms_dis;
    out.mean_abs_e_theta += r.metrics.mean_abs_e_theta;
    out.rms_e_theta += r.metrics.rms_e_theta;
    ++count;
  }
  if (count > 0) {
    out.mean_dis /= count;
    out.rms_dis /= count;
    out.mean_abs_e_theta /= count;
    out.rms_e_theta /= count;
  }
  return out;
}

}  // namespace

double Dis(double e_x, double e_y) { return std::hypot(e_x, e_y); }

absl::StatusOr<double> Rmse(std::span<const double> samples) {
  if (samples.empty()) return absl::InvalidArgumentError("empty sequence");
  double sum = 0.0;
  for (double e : samples) sum += e * e;
  return std::sqrt(sum / static_cast<double>(samples.size()));
}

absl::StatusOr<MetricsSummary> Summarize(const ExperimentRecord& record) {
  if (record.rows.empty()) return absl::InvalidArgumentError("empty record");
  double dis = 0.0;
  double dis_sq = 0.0;
  double heading = 0.0;
  double heading_sq = 0.0;
  for (const ExperimentRow& row : record.rows) {
    dis += row.dis;
    dis_sq += row.dis * row.dis;
    heading += std::abs(row.global.theta);
    heading_sq += row.global.theta * row.global.theta;
  }
  const double n = static_cast<double>(record.rows.size());
  return MetricsSummary{kCentimetres * dis / n,
                        kCentimetres * std::sqrt(dis_sq / n),
                        kDegrees * heading / n,
                        kDegrees * std::sqrt(heading_sq / n)};
}

double Improvement(double baseline, double treated) {
  if (baseline == 0.0) return treated == 0.0 ? 0.0 : -100.0;
  return 100.0 * (baseline - treated) / baseline;
}

absl::StatusOr<Comparison> Compare(std::span<const RunSummary> baseline,
                                   std::span<const RunSummary> treated,
                                   double alpha) {
  if (baseline.size() != treated.size()) {
    return absl::FailedPreconditionError(absl::StrFormat(
        "mismatched runs: %d vs %d records", baseline.size(), treated.size()));
  }
  if (baseline.empty()) {
    return absl::FailedPreconditionError("mismatched runs: no records");
  }
  std::vector<std::string> trajectories;
  for (std::size_t i = 0; i < baseline.size(); ++i) {
    if (baseline[i].trajectory != treated[i].trajectory ||
        baseline[i].index != treated[i].index) {
      return absl::FailedPreconditionError(absl::StrFormat(
          "mismatched runs: %s/%d paired with %s/%d", baseline[i].trajectory,
          baseline[i].index, treated[i].trajectory, treated[i].index));
    }
    bool seen = false;
    for (const std::string& t : trajectories) seen = seen || t == baseline[i].trajectory;
    if (!seen) trajectories.push_back(baseline[i].trajectory);
  }
  trajectories.push_back("all");

  Comparison out;
  for (const std::string& trajectory : trajectories) {
    ComparisonRow row;
    row.trajectory = trajectory;
    for (const RunSummary& r : baseline) {
      if (trajectory == "all" || r.trajectory == trajectory) ++row.runs;
    }
    row.baseline = Mean(baseline, trajectory);
    row.treated = Mean(treated, trajectory);
    row.improvement = {
        Improvement(row.baseline.mean_dis, row.treated.mean_dis),
        Improvement(row.baseline.rms_dis, row.treated.rms_dis),
        Improvement(row.baseline.mean_abs_e_theta, row.treated.mean_abs_e_theta),
        Improvement(row.baseline.rms_e_theta, row.treated.rms_e_theta)};
    out.rows.push_back(row);
  }

  SignificanceResult& sig = out.significance;
  sig.alpha = alpha;
  if (baseline.size() < 2) {
    // A single block carries no rank information.
    sig.far.degenerate = true;
    sig.far.p_permutation = 1.0;
    sig.posthoc_raw_p = {1.0};
    sig.finner_adjusted_p = {1.0};
    return out;
  }
  BlockTable table(2);
  for (std::size_t i = 0; i < baseline.size(); ++i) {
    table[0].push_back(baseline[i].metrics.mean_dis);
    table[1].push_back(treated[i].metrics.mean_dis);
  }
  absl::StatusOr<FarResult> far = FarTest(table);
  if (!far.ok()) return far.status();
  sig.far = *far;
  if (sig.far.degenerate) {
    sig.posthoc_raw_p = {1.0};
  } else {
    absl::StatusOr<std::vector<double>> raw = FarPairwiseVsControl(table, 0);
    if (!raw.ok()) return raw.status();
    sig.posthoc_raw_p = *raw;
  }
  sig.finner_adjusted_p = FinnerAdjust(sig.posthoc_raw_p, sig.posthoc_raw_p.size());
  sig.significant = !sig.far.degenerate && sig.far.p_value() < alpha;
  return out;
}

std::string FormatComparisonMarkdown(const Comparison& comparison) {
  std::string out =
      "| trajectory | runs | M dis SMC | M dis SMC-SS | (%)     | RMS dis SMC | "
      "RMS dis SMC-SS | (%)     | M e_theta SMC | M e_theta SMC-SS | (%)     | "
      "RMS e_theta SMC | RMS e_theta SMC-SS | (%)     |\n"
      "|------------|------|-----------|--------------|---------|-------------|"
      "----------------|---------|---------------|------------------|---------|"
      "-----------------|--------------------|---------|\n";
  for (const ComparisonRow& r : comparison.rows) {
    out += absl::StrFormat(
        "| %-10s | %4d | %9.2f | %12.2f | %+7.2f | %11.2f | %14.2f | %+7.2f | "
        "%13.2f | %16.2f | %+7.2f | %15.2f | %18.2f | %+7.2f |\n",
        r.trajectory, r.runs, r.baseline.mean_dis, r.treated.mean_dis,
        r.improvement.mean_dis, r.baseline.rms_dis, r.treated.rms_dis,
        r.improvement.rms_dis, r.baseline.mean_abs_e_theta,
        r.treated.mean_abs_e_theta, r.improvement.mean_abs_e_theta,
        r.baseline.rms_e_theta, r.treated.rms_e_theta, r.improvement.rms_e_theta);
  }
  const SignificanceResult& s = comparison.significance;
  out += "\n| test | statistic | p | adjusted p |\n|------|-----------|---|------------|\n";
  out += absl::StrFormat("| FAR (permutation) | %.4f | %.4g | - |\n",
                         s.far.statistic, s.far.p_value());
  out += absl::StrFormat("| FAR (chi-square) | %.4f | %.4g | - |\n",
                         s.far.statistic, s.far.p_chi_square);
  for (std::size_t i = 0; i < s.posthoc_raw_p.size(); ++i) {
    out += absl::StrFormat("| Finner post hoc | - | %.4g | %.4g |\n",
                           s.posthoc_raw_p[i], s.finner_adjusted_p[i]);
  }
  out += absl::StrFormat("\nalpha = %.3g, significant = %s%s\n", s.alpha,
                         s.significant ? "yes" : "no",
                         s.far.degenerate ? " (degenerate data)" : "");
  return out;
}

}  // namespace ssmr
