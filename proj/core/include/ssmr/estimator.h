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

#ifndef SSMR_ESTIMATOR_H_
#define SSMR_ESTIMATOR_H_

// Synthetic slip/skid estimators. They stand in for learned estimators by
// perturbing the ground truth with zero-mean Laplace noise whose scale equals
// the target mean absolute error.

#include <cstdint>
#include <deque>
#include <random>
#include <span>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "ssmr/model.h"

namespace ssmr {

enum class EstimatorKind { kOracle, kNoisy, kDelayedNoisy };

struct EstimatorConfig {
  EstimatorKind kind = EstimatorKind::kOracle;
  double slip_mae_target = 7.06;   // percentage points of slip ratio
  double skid_mae_target = 12.35;  // mm/s
  double latency = 0.0;            // s
  double rate = 100.0;             // Hz
  std::uint64_t seed = 0;
  double slip_cap = kDefaultSlipCap;
};

absl::Status ValidateEstimatorConfig(const EstimatorConfig& config);

struct EstimateSample {
  double t = 0.0;
  double s_hat = 0.0;
  double sigma_hat = 0.0;

  SlipState AsSlip() const { return {s_hat, sigma_hat}; }
};

// Owns its random stream; use from one thread at a time. Calls must come in
// nondecreasing time order.
class SlipEstimator {
 public:
  explicit SlipEstimator(const EstimatorConfig& config);

  EstimateSample Estimate(const SlipState& truth, double t);

 private:
  double Laplace(double scale);
  EstimateSample Noisy(const SlipState& truth, double t);

  EstimatorConfig config_;
  std::mt19937_64 rng_;
  std::uniform_real_distribution<double> unit_{-0.5, 0.5};
  std::deque<EstimateSample> history_;
  EstimateSample held_;
  bool has_held_ = false;
  double next_sample_time_ = 0.0;
};

struct EstimatorReport {
  double mae = 0.0;
  double smape = 0.0;     // percent
  double accuracy = 0.0;  // percent of matching signs outside the dead band
};

struct TracePoint {
  double truth = 0.0;
  double estimate = 0.0;
};

// Fails with InvalidArgument ("empty trace") for an empty trace.
absl::StatusOr<EstimatorReport> ReportEstimator(
    std::span<const TracePoint> trace, double dead_band = 1e-3);

}  // namespace ssmr

#endif  // SSMR_ESTIMATOR_H_
