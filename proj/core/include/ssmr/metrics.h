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

#ifndef SSMR_METRICS_H_
#define SSMR_METRICS_H_

// Tracking-error metrics and the SMC vs SMC-SS comparison.

#include <span>
#include <string>
#include <vector>

#include "absl/status/statusor.h"
#include "ssmr/simulator.h"
#include "ssmr/stats.h"

namespace ssmr {

// Distance tracking error, m.
double Dis(double e_x, double e_y);

// Fails with InvalidArgument ("empty sequence") for no samples.
absl::StatusOr<double> Rmse(std::span<const double> samples);

struct MetricsSummary {
  double mean_dis = 0.0;          // cm
  double rms_dis = 0.0;           // cm
  double mean_abs_e_theta = 0.0;  // degrees
  double rms_e_theta = 0.0;       // degrees

  friend bool operator==(const MetricsSummary&,
                         const MetricsSummary&) = default;
};

// Fails with InvalidArgument ("empty record") for a record without rows.
absl::StatusOr<MetricsSummary> Summarize(const ExperimentRecord& record);

// 100 * (baseline - treated) / baseline. A zero baseline gives 0 when
// treated is also 0 and -100 otherwise.
double Improvement(double baseline, double treated);

// Summary of one run, keyed by trajectory name and repetition index.
struct RunSummary {
  std::string trajectory;
  int index = 0;
  MetricsSummary metrics;
};

// Mean metrics of one controller over the runs of one trajectory, the
// treated controller's means, and the per-metric improvement.
struct ComparisonRow {
  std::string trajectory;  // "all" for the pooled row
  int runs = 0;
  MetricsSummary baseline;
  MetricsSummary treated;
  MetricsSummary improvement;  // percent
};

struct SignificanceResult {
  FarResult far;
  std::vector<double> posthoc_raw_p;
  std::vector<double> finner_adjusted_p;
  double alpha = 0.05;
  bool significant = false;  // FAR p-value below alpha
};

struct Comparison {
  std::vector<ComparisonRow> rows;  // per trajectory in input order, then all
  SignificanceResult significance;
};

// Runs are matched pairwise; the lists must agree in length, trajectory and
// index order. Fails with FailedPrecondition ("mismatched runs") otherwise.
// FAR treats each run as a block over the mean-dis values.
absl::StatusOr<Comparison> Compare(std::span<const RunSummary> baseline,
                                   std::span<const RunSummary> treated,
                                   double alpha = 0.05);

// Fixed-width Markdown table of the comparison rows plus the test results.
std::string FormatComparisonMarkdown(const Comparison& comparison);

}  // namespace ssmr

#endif  // SSMR_METRICS_H_
