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

#ifndef SSMR_STATS_H_
#define SSMR_STATS_H_

// Friedman aligned-ranks test and the Finner step-down adjustment.

#include <optional>
#include <span>
#include <vector>

#include "absl/status/statusor.h"

namespace ssmr {

// values[j][i]: measurement of treatment j on block i.
using BlockTable = std::vector<std::vector<double>>;

// Observation minus its block mean, ranked jointly over all k * n cells with
// average ranks for ties. ranks[j][i] mirrors the table layout.
BlockTable AlignedRanks(const BlockTable& values);

struct FarResult {
  double statistic = 0.0;
  double p_chi_square = 1.0;  // chi-square reference, k - 1 dof
  // Exact p-value over all within-block treatment permutations. Empty when
  // the enumeration would exceed the limit.
  std::optional<double> p_permutation;
  // True when all aligned observations coincide; the statistic is then 0 and
  // both p-values are 1.
  bool degenerate = false;
  // Per-treatment rank totals.
  std::vector<double> rank_sums;

  // Permutation p-value when available, chi-square otherwise.
  double p_value() const { return p_permutation.value_or(p_chi_square); }
};

// Enumerating (k!)^n permutations is attempted up to this count for k >= 3.
// For k = 2 the exact distribution is computed without enumeration.
inline constexpr double kPermutationLimit = 2e6;

// Requires k >= 2, n >= 2 and a rectangular table of finite values.
absl::StatusOr<FarResult> FarTest(const BlockTable& values);

// Two-sided p-values of the aligned-rank z statistics comparing every
// treatment j != control with the control.
absl::StatusOr<std::vector<double>> FarPairwiseVsControl(
    const BlockTable& values, std::size_t control);

// Finner step-down adjustment for `comparisons` hypotheses. Output is in the
// input order. For sorted p_(1) <= ... <= p_(m):
//   adjusted_(i) = max_{j <= i} 1 - (1 - p_(j))^(comparisons / j),
// clamped to [0, 1].
std::vector<double> FinnerAdjust(std::span<const double> raw_p,
                                 std::size_t comparisons);

}  // namespace ssmr

#endif  // SSMR_STATS_H_
