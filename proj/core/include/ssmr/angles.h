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

#ifndef SSMR_ANGLES_H_
#define SSMR_ANGLES_H_

namespace ssmr {

inline constexpr double kPi = 3.14159265358979323846;

// Wraps an angle into the half-open interval (-pi, pi]. An input of exactly
// -pi (or any odd multiple of pi) maps to +pi.
double WrapAngle(double angle);

}  // namespace ssmr

#endif  // SSMR_ANGLES_H_
