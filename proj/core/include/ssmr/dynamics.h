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

#ifndef SSMR_DYNAMICS_H_
#define SSMR_DYNAMICS_H_

#include <cstdint>

#include "absl/status/status.h"

namespace ssmr {

// Coefficients of the first-order velocity dynamics
//
//   v_dot     = (c3/c1) w^2 - (c4/c1) v + v_r / c1
//   omega_dot = -(c5/c2) v w - (c6/c2) w + w_r / c2
//
// that map the commanded velocities (v_r, w_r) fed to the on-board wheel-speed
// loop onto the realised body velocities. c1 and c2 act as effective inertias,
// c3..c6 as drag and coupling terms. The defaults are not identified values;
// they give unit-order static gain and sub-second time constants so the
// command limits still admit the reference speeds.
struct DynamicsParams {
  double c1 = 0.3;
  double c2 = 0.25;
  double c3 = 0.02;
  double c4 = 1.0;
  double c5 = 0.05;
  double c6 = 1.0;

  friend bool operator==(const DynamicsParams&,
                         const DynamicsParams&) = default;
};

absl::Status ValidateParams(const DynamicsParams& params);

struct VelocityCommand {
  double v = 0.0;      // m/s
  double omega = 0.0;  // rad/s
};

struct TwistRate {
  double v_dot = 0.0;
  double omega_dot = 0.0;
};

TwistRate ComputeTwistDerivative(double v_x, double omega,
                                 const VelocityCommand& command,
                                 const DynamicsParams& params);

// Nominal coefficients with a symmetric relative uncertainty band.
struct UncertaintyEnvelope {
  DynamicsParams nominal;
  double fraction = 0.25;

  DynamicsParams Upper() const;
  DynamicsParams Lower() const;
};

absl::Status ValidateEnvelope(const UncertaintyEnvelope& envelope);

// Draws every coefficient independently and uniformly from its band.
DynamicsParams SampleParams(const UncertaintyEnvelope& envelope,
                            std::uint64_t seed);

}  // namespace ssmr

#endif  // SSMR_DYNAMICS_H_
