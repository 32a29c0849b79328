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

#include <algorithm>

#include "gtest/gtest.h"

namespace ssmr {
namespace {

TEST(TwistDerivative, RestIsEquilibrium) {
  TwistRate r = ComputeTwistDerivative(0, 0, {0, 0}, DynamicsParams{});
  EXPECT_EQ(r.v_dot, 0.0);
  EXPECT_EQ(r.omega_dot, 0.0);
}

TEST(TwistDerivative, Examples) {
  DynamicsParams p{1, 1, 0.2, 0.5, 0.3, 0.4};
  TwistRate drag = ComputeTwistDerivative(1, 0, {0, 0}, p);
  EXPECT_NEAR(drag.v_dot, -0.5, 1e-12);
  TwistRate full = ComputeTwistDerivative(1, 0.5, {1, 0.1}, p);
  EXPECT_NEAR(full.v_dot, 0.55, 1e-12);
  EXPECT_NEAR(full.omega_dot, -0.25, 1e-12);
}

TEST(TwistDerivative, LinearInCommand) {
  DynamicsParams p;
  TwistRate zero = ComputeTwistDerivative(0.3, -0.2, {0, 0}, p);
  TwistRate cmd = ComputeTwistDerivative(0.3, -0.2, {0.4, 0.1}, p);
  EXPECT_NEAR(cmd.v_dot - zero.v_dot, 0.4 / p.c1, 1e-14);
  EXPECT_NEAR(cmd.omega_dot - zero.omega_dot, 0.1 / p.c2, 1e-14);
}

TEST(TwistDerivative, ConstantCommandConverges) {
  DynamicsParams p;
  VelocityCommand u{0.3, 0.2};
  double v = 0, w = 0;
  const double h = 1e-3;
  auto f = [&](double v_, double w_) {
    return ComputeTwistDerivative(v_, w_, u, p);
  };
  for (int i = 0; i < 60000; ++i) {
    TwistRate k1 = f(v, w);
    TwistRate k2 = f(v + 0.5 * h * k1.v_dot, w + 0.5 * h * k1.omega_dot);
    TwistRate k3 = f(v + 0.5 * h * k2.v_dot, w + 0.5 * h * k2.omega_dot);
    TwistRate k4 = f(v + h * k3.v_dot, w + h * k3.omega_dot);
    v += h / 6 * (k1.v_dot + 2 * k2.v_dot + 2 * k3.v_dot + k4.v_dot);
    w += h / 6 * (k1.omega_dot + 2 * k2.omega_dot + 2 * k3.omega_dot +
                  k4.omega_dot);
  }
  TwistRate end = f(v, w);
  EXPECT_NEAR(end.v_dot, 0.0, 1e-6);
  EXPECT_NEAR(end.omega_dot, 0.0, 1e-6);
}

TEST(ValidateParams, RejectsNonPositiveInertia) {
  EXPECT_TRUE(ValidateParams(DynamicsParams{}).ok());
  DynamicsParams p;
  p.c1 = 0;
  EXPECT_FALSE(ValidateParams(p).ok());
  p = DynamicsParams{};
  p.c2 = -1;
  EXPECT_FALSE(ValidateParams(p).ok());
}

TEST(Envelope, Bounds) {
  UncertaintyEnvelope env;
  EXPECT_TRUE(ValidateEnvelope(env).ok());
  EXPECT_DOUBLE_EQ(env.Upper().c1, env.nominal.c1 * 1.25);
  EXPECT_DOUBLE_EQ(env.Lower().c6, env.nominal.c6 * 0.75);
  env.fraction = 1.0;
  EXPECT_FALSE(ValidateEnvelope(env).ok());
  env.fraction = -0.1;
  EXPECT_FALSE(ValidateEnvelope(env).ok());
}

TEST(SampleParams, ZeroWidthReturnsNominal) {
  UncertaintyEnvelope env;
  env.fraction = 0;
  EXPECT_EQ(SampleParams(env, 42), env.nominal);
}

TEST(SampleParams, DeterministicPerSeed) {
  UncertaintyEnvelope env;
  EXPECT_EQ(SampleParams(env, 7), SampleParams(env, 7));
  EXPECT_FALSE(SampleParams(env, 7) == SampleParams(env, 8));
}

TEST(SampleParams, StaysInsideEnvelope) {
  UncertaintyEnvelope env;
  const DynamicsParams lo = env.Lower();
  const DynamicsParams hi = env.Upper();
  double min_c1 = 1e9, max_c1 = -1e9;
  for (std::uint64_t seed = 0; seed < 10000; ++seed) {
    DynamicsParams p = SampleParams(env, seed);
    const double v[] = {p.c1, p.c2, p.c3, p.c4, p.c5, p.c6};
    const double l[] = {lo.c1, lo.c2, lo.c3, lo.c4, lo.c5, lo.c6};
    const double h[] = {hi.c1, hi.c2, hi.c3, hi.c4, hi.c5, hi.c6};
    for (int i = 0; i < 6; ++i) {
      ASSERT_GE(v[i], l[i]);
      ASSERT_LE(v[i], h[i]);
    }
    min_c1 = std::min(min_c1, p.c1);
    max_c1 = std::max(max_c1, p.c1);
  }
  // The samples cover the band rather than clustering at the nominal.
  EXPECT_LT(min_c1, lo.c1 + 0.01 * (hi.c1 - lo.c1));
  EXPECT_GT(max_c1, hi.c1 - 0.01 * (hi.c1 - lo.c1));
}

}  // namespace
}  // namespace ssmr
