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

#include "ssmr/estimator.h"

#include <algorithm>
#include <cmath>

namespace ssmr {
namespace {

constexpr double kTimeSlack = 1e-9;

}  // namespace

absl::Status ValidateEstimatorConfig(const EstimatorConfig& config) {
  if (!(config.slip_mae_target >= 0.0) || !(config.skid_mae_target >= 0.0)) {
    return absl::InvalidArgumentError("estimator targets must be >= 0");
  }
  if (!(config.rate > 0.0)) {
    return absl::InvalidArgumentError("estimator rate must be positive");
  }
  if (!(config.latency >= 0.0)) {
    return absl::InvalidArgumentError("estimator latency must be >= 0");
  }
  return absl::OkStatus();
}

SlipEstimator::SlipEstimator(const EstimatorConfig& config)
    : config_(config), rng_(config.seed) {}

double SlipEstimator::Laplace(double scale) {
  const double u = unit_(rng_);
  if (scale == 0.0) return 0.0;
  const double magnitude = -scale * std::log1p(-2.0 * std::abs(u));
  return u < 0.0 ? -magnitude : magnitude;
}

EstimateSample SlipEstimator::Noisy(const SlipState& truth, double t) {
  EstimateSample out;
  out.t = t;
  out.s_hat = truth.s_v + Laplace(config_.slip_mae_target / 100.0);
  out.sigma_hat = truth.sigma_v + Laplace(config_.skid_mae_target / 1000.0);
  out.s_hat = std::clamp(out.s_hat, -config_.slip_cap, config_.slip_cap);
  return out;
}

EstimateSample SlipEstimator::Estimate(const SlipState& truth, double t) {
  switch (config_.kind) {
    case EstimatorKind::kOracle:
      return {t, truth.s_v, truth.sigma_v};
    case EstimatorKind::kNoisy:
      return Noisy(truth, t);
    case EstimatorKind::kDelayedNoisy:
      break;
  }
  history_.push_back(Noisy(truth, t));
  if (!has_held_ || t + kTimeSlack >= next_sample_time_) {
    // Latest noisy sample no newer than t - latency; before any such sample
    // exists the oldest one is held.
    const double target = t - config_.latency;
    while (history_.size() > 1 && history_[1].t <= target + kTimeSlack) {
      history_.pop_front();
    }
    held_ = history_.front();
    has_held_ = true;
    const double period = 1.0 / config_.rate;
    next_sample_time_ =
        (std::floor((t + kTimeSlack) / period) + 1.0) * period;
  }
  EstimateSample out = held_;
  out.t = t;
  return out;
}

absl::StatusOr<EstimatorReport> ReportEstimator(
    std::span<const TracePoint> trace, double dead_band) {
  if (trace.empty()) return absl::InvalidArgumentError("empty trace");
  double abs_sum = 0.0;
  double smape_sum = 0.0;
  std::size_t smape_count = 0;
  std::size_t direction_hits = 0;
  std::size_t direction_count = 0;
  for (const TracePoint& p : trace) {
    const double err = std::abs(p.truth - p.estimate);
    abs_sum += err;
    const double scale = std::abs(p.truth) + std::abs(p.estimate);
    if (scale > 0.0) {
      smape_sum += 2.0 * err / scale;
      ++smape_count;
    }
    if (std::abs(p.truth) > dead_band) {
      ++direction_count;
      if ((p.truth > 0.0) == (p.estimate > 0.0) && p.estimate != 0.0) {
        ++direction_hits;
      }
    }
  }
  EstimatorReport report;
  report.mae = abs_sum / static_cast<double>(trace.size());
  report.smape = smape_count == 0
                     ? 0.0
                     : 100.0 * smape_sum / static_cast<double>(smape_count);
  report.accuracy = direction_count == 0
                        ? 100.0
                        : 100.0 * static_cast<double>(direction_hits) /
                              static_cast<double>(direction_count);
  return report;
}

}  // namespace ssmr
