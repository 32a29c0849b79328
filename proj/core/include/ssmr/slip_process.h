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

#ifndef SSMR_SLIP_PROCESS_H_
#define SSMR_SLIP_PROCESS_H_

// Ground-truth slip and skid generators on a fixed time grid.

#include <cstdint>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "ssmr/model.h"

namespace ssmr {

enum class SlipProcessKind { kConstant, kPiecewise, kSmoothRandom };

std::string_view SlipProcessName(SlipProcessKind kind);
absl::StatusOr<SlipProcessKind> ParseSlipProcessKind(std::string_view name);

// While active, a spike replaces both channels with its own values.
struct SlipSpike {
  double t_start = 0.0;   // s
  double duration = 0.0;  // s
  double s_v = 0.0;
  double sigma_v = 0.0;   // m/s
};

struct SlipProcessConfig {
  SlipProcessKind kind = SlipProcessKind::kConstant;
  double mean_slip = 0.0;
  double slip_sigma = 0.0;         // stationary std of the slip channel
  double skid_sigma = 0.0;         // m/s, stationary std of the skid channel
  double correlation_time = 1.0;   // s
  std::vector<SlipSpike> spikes;
  std::uint64_t seed = 0;
  double slip_cap = kDefaultSlipCap;
};

absl::Status ValidateSlipProcess(const SlipProcessConfig& config);

// Spikes override every kind; piecewise is the constant baseline plus spikes.
// The smooth-random channels are Ornstein-Uhlenbeck processes sampled exactly
// on the grid and started from their stationary distribution. Values are
// generated lazily and cached, so the sequence does not depend on query
// order.
class SlipProcess {
 public:
  SlipProcess(const SlipProcessConfig& config, double dt);

  SlipState AtTick(std::size_t tick);
  // Nearest grid tick to t.
  SlipState At(double t);

  double dt() const { return dt_; }

 private:
  void ExtendTo(std::size_t tick);
  SlipState Baseline(std::size_t tick) const;

  SlipProcessConfig config_;
  double dt_;
  std::mt19937_64 rng_;
  std::normal_distribution<double> normal_{0.0, 1.0};
  std::vector<double> slip_path_;
  std::vector<double> skid_path_;
};

}  // namespace ssmr

#endif  // SSMR_SLIP_PROCESS_H_
