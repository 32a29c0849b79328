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

#include "ssmr/dynamics.h"

#include <cmath>
#include <random>

namespace ssmr {
namespace {

DynamicsParams Scale(const DynamicsParams& p, double factor) {
  return {p.c1 * factor, p.c2 * factor, p.c3 * factor,
          p.c4 * factor, p.c5 * factor, p.c6 * factor};
}

}  // namespace

absl::Status ValidateParams(const DynamicsParams& p) {
  for (double c : {p.c1, p.c2, p.c3, p.c4, p.c5, p.c6}) {
    if (!std::isfinite(c)) {
      return absl::InvalidArgumentError("dynamics coefficients must be finite");
    }
  }
  if (!(p.c1 > 0.0) || !(p.c2 > 0.0)) {
    return absl::InvalidArgumentError("c1 and c2 must be positive");
  }
  return absl::OkStatus();
}

TwistRate ComputeTwistDerivative(double v_x, double omega,
                                 const VelocityCommand& command,
                                 const DynamicsParams& p) {
  TwistRate rate;
  rate.v_dot = p.c3 / p.c1 * omega * omega - p.c4 / p.c1 * v_x +
               command.v / p.c1;
  rate.omega_dot = -p.c5 / p.c2 * v_x * omega - p.c6 / p.c2 * omega +
                   command.omega / p.c2;
  return rate;
}

DynamicsParams UncertaintyEnvelope::Upper() const {
  return Scale(nominal, 1.0 + fraction);
}

DynamicsParams UncertaintyEnvelope::Lower() const {
  return Scale(nominal, 1.0 - fraction);
}

absl::Status ValidateEnvelope(const UncertaintyEnvelope& envelope) {
  if (absl::Status s = ValidateParams(envelope.nominal); !s.ok()) return s;
  if (!(envelope.fraction >= 0.0 && envelope.fraction < 1.0)) {
    return absl::InvalidArgumentError("uncertainty fraction must be in [0, 1)");
  }
  const DynamicsParams& n = envelope.nominal;
  for (double c : {n.c1, n.c2, n.c3, n.c4, n.c5, n.c6}) {
    if (!(c > 0.0)) {
      return absl::InvalidArgumentError(
          "nominal coefficients must be positive for a positive envelope");
    }
  }
  return absl::OkStatus();
}

DynamicsParams SampleParams(const UncertaintyEnvelope& envelope,
                            std::uint64_t seed) {
  if (envelope.fraction == 0.0) return envelope.nominal;
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  const double f = envelope.fraction;
  const DynamicsParams& n = envelope.nominal;
  DynamicsParams out;
  out.c1 = n.c1 * (1.0 + f * unit(rng));
  out.c2 = n.c2 * (1.0 + f * unit(rng));
  out.c3 = n.c3 * (1.0 + f * unit(rng));
  out.c4 = n.c4 * (1.0 + f * unit(rng));
  out.c5 = n.c5 * (1.0 + f * unit(rng));
  out.c6 = n.c6 * (1.0 + f * unit(rng));
  return out;
}

}  // namespace ssmr
