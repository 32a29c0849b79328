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

#include "ssmr/slip_process.h"

#include <algorithm>
#include <cmath>

#include "absl/strings/str_cat.h"
#include "absl/strings/str_format.h"

namespace ssmr {

std::string_view SlipProcessName(SlipProcessKind kind) {
  switch (kind) {
    case SlipProcessKind::kConstant:
      return "constant";
    case SlipProcessKind::kPiecewise:
      return "piecewise";
    case SlipProcessKind::kSmoothRandom:
      return "smooth-random";
  }
  return "unknown";
}

absl::StatusOr<SlipProcessKind> ParseSlipProcessKind(std::string_view name) {
  if (name == "constant") return SlipProcessKind::kConstant;
  if (name == "piecewise") return SlipProcessKind::kPiecewise;
  if (name == "smooth-random") return SlipProcessKind::kSmoothRandom;
  return absl::InvalidArgumentError(
      absl::StrFormat("unknown slip process '%s'", std::string(name)));
}

absl::Status ValidateSlipProcess(const SlipProcessConfig& c) {
  if (absl::Status s = ValidateSlip({c.mean_slip, 0.0}, c.slip_cap); !s.ok()) {
    return absl::InvalidArgumentError(
        absl::StrCat("slip mean: ", s.message()));
  }
  for (const SlipSpike& spike : c.spikes) {
    if (absl::Status s = ValidateSlip({spike.s_v, spike.sigma_v}, c.slip_cap);
        !s.ok()) {
      return absl::InvalidArgumentError(
          absl::StrCat("slip spike: ", s.message()));
    }
    if (!(spike.duration >= 0.0)) {
      return absl::InvalidArgumentError("slip spike duration must be >= 0");
    }
  }
  if (!(c.slip_sigma >= 0.0) || !(c.skid_sigma >= 0.0)) {
    return absl::InvalidArgumentError("slip process deviations must be >= 0");
  }
  if (c.kind == SlipProcessKind::kSmoothRandom && !(c.correlation_time > 0.0)) {
    return absl::InvalidArgumentError("correlation time must be positive");
  }
  return absl::OkStatus();
}

SlipProcess::SlipProcess(const SlipProcessConfig& config, double dt)
    : config_(config), dt_(dt), rng_(config.seed) {}

void SlipProcess::ExtendTo(std::size_t tick) {
  if (config_.kind != SlipProcessKind::kSmoothRandom) return;
  const double decay = std::exp(-dt_ / config_.correlation_time);
  const double innovation = std::sqrt(1.0 - decay * decay);
  while (slip_path_.size() <= tick) {
    if (slip_path_.empty()) {
      slip_path_.push_back(config_.mean_slip +
                           config_.slip_sigma * normal_(rng_));
      skid_path_.push_back(config_.skid_sigma * normal_(rng_));
      continue;
    }
    const double slip = config_.mean_slip +
                        (slip_path_.back() - config_.mean_slip) * decay +
                        config_.slip_sigma * innovation * normal_(rng_);
    const double skid = skid_path_.back() * decay +
                        config_.skid_sigma * innovation * normal_(rng_);
    slip_path_.push_back(slip);
    skid_path_.push_back(skid);
  }
}

SlipState SlipProcess::Baseline(std::size_t tick) const {
  if (config_.kind != SlipProcessKind::kSmoothRandom) {
    return {config_.mean_slip, 0.0};
  }
  const double cap = config_.slip_cap;
  return {std::clamp(slip_path_[tick], -cap, cap), skid_path_[tick]};
}

SlipState SlipProcess::AtTick(std::size_t tick) {
  ExtendTo(tick);
  const double t = static_cast<double>(tick) * dt_;
  for (const SlipSpike& spike : config_.spikes) {
    if (t + 1e-9 >= spike.t_start && t < spike.t_start + spike.duration - 1e-9) {
      return {spike.s_v, spike.sigma_v};
    }
  }
  return Baseline(tick);
}

SlipState SlipProcess::At(double t) {
  const double ticks = std::max(0.0, std::round(t / dt_));
  return AtTick(static_cast<std::size_t>(ticks));
}

}  // namespace ssmr
