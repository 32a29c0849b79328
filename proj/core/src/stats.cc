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

#include "ssmr/stats.h"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <numeric>

#include "absl/strings/str_format.h"
#include "boost/math/distributions/chi_squared.hpp"
#include "boost/math/distributions/normal.hpp"

namespace ssmr {
namespace {

absl::Status ValidateTable(const BlockTable& values) {
  if (values.size() < 2) {
    return absl::InvalidArgumentError("at least two treatments are required");
  }
  const std::size_t n = values[0].size();
  if (n < 2) return absl::InvalidArgumentError("at least two blocks required");
  for (const std::vector<double>& row : values) {
    if (row.size() != n) {
      return absl::InvalidArgumentError("missing cells: ragged block table");
    }
    for (double v : row) {
      if (!std::isfinite(v)) {
        return absl::InvalidArgumentError("non-finite measurement");
      }
    }
  }
  return absl::OkStatus();
}

BlockTable Align(const BlockTable& values) {
  const std::size_t k = values.size();
  const std::size_t n = values[0].size();
  BlockTable aligned(k, std::vector<double>(n));
  for (std::size_t i = 0; i < n; ++i) {
    double mean = 0.0;
    for (std::size_t j = 0; j < k; ++j) mean += values[j][i];
    mean /= static_cast<double>(k);
    for (std::size_t j = 0; j < k; ++j) aligned[j][i] = values[j][i] - mean;
  }
  return aligned;
}

// Statistic from rank totals; only the treatment sums change under
// within-block permutation. `sum_sq_ranks` equals kn(kn+1)(2kn+1)/6 without
// ties and is smaller with them.
double Statistic(double sum_sq_treatment, double sum_sq_block,
                 double sum_sq_ranks, double k, double n) {
  const double kn = k * n;
  const double numerator =
      (k - 1.0) * (sum_sq_treatment - (k * n * n / 4.0) * (kn + 1.0) * (kn + 1.0));
  const double denominator = sum_sq_ranks - sum_sq_block / k;
  return numerator / denominator;
}

double SumSquares(std::span<const double> v) {
  return std::inner_product(v.begin(), v.end(), v.begin(), 0.0);
}

// Exact two-treatment p-value: block i adds either of its two ranks to the
// first rank total with probability 1/2. Ranks are multiples of 1/2, so the
// distribution is tracked over doubled ranks.
double TwoTreatmentPermutationP(const BlockTable& ranks) {
  const std::size_t n = ranks[0].size();
  std::int64_t total = 0;
  std::int64_t observed = 0;
  std::vector<std::array<std::int64_t, 2>> choices(n);
  for (std::size_t i = 0; i < n; ++i) {
    choices[i] = {std::llround(2.0 * ranks[0][i]),
                  std::llround(2.0 * ranks[1][i])};
    total += choices[i][0] + choices[i][1];
    observed += choices[i][0];
  }
  std::vector<double> dist(static_cast<std::size_t>(total) + 1, 0.0);
  dist[0] = 1.0;
  std::int64_t reach = 0;
  for (const auto& [a, b] : choices) {
    std::vector<double> next(dist.size(), 0.0);
    for (std::int64_t x = 0; x <= reach; ++x) {
      if (dist[x] == 0.0) continue;
      next[x + a] += 0.5 * dist[x];
      next[x + b] += 0.5 * dist[x];
    }
    reach += std::max(a, b);
    dist.swap(next);
  }
  // Sum of squares of the two totals grows with |2 * R - total|.
  const std::int64_t observed_dev = std::llabs(2 * observed - total);
  double p = 0.0;
  for (std::int64_t x = 0; x <= total; ++x) {
    if (std::llabs(2 * x - total) >= observed_dev) p += dist[x];
  }
  return std::min(p, 1.0);
}

std::optional<double> EnumeratedPermutationP(const BlockTable& ranks,
                                             double observed_sum_sq) {
  const std::size_t k = ranks.size();
  const std::size_t n = ranks[0].size();
  double factorial = 1.0;
  for (std::size_t j = 2; j <= k; ++j) factorial *= static_cast<double>(j);
  if (std::pow(factorial, static_cast<double>(n)) > kPermutationLimit) {
    return std::nullopt;
  }
  // All orderings of the k ranks in each block.
  std::vector<std::vector<std::vector<double>>> orders(n);
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<double> column(k);
    for (std::size_t j = 0; j < k; ++j) column[j] = ranks[j][i];
    std::vector<std::size_t> perm(k);
    std::iota(perm.begin(), perm.end(), 0);
    do {
      std::vector<double> ordered(k);
      for (std::size_t j = 0; j < k; ++j) ordered[j] = column[perm[j]];
      orders[i].push_back(std::move(ordered));
    } while (std::next_permutation(perm.begin(), perm.end()));
  }
  const double tolerance = 1e-9 * std::max(1.0, observed_sum_sq);
  std::vector<std::size_t> index(n, 0);
  std::vector<double> sums(k);
  std::uint64_t hits = 0;
  std::uint64_t count = 0;
  while (true) {
    std::fill(sums.begin(), sums.end(), 0.0);
    for (std::size_t i = 0; i < n; ++i) {
      const std::vector<double>& o = orders[i][index[i]];
      for (std::size_t j = 0; j < k; ++j) sums[j] += o[j];
    }
    ++count;
    if (SumSquares(sums) >= observed_sum_sq - tolerance) ++hits;
    std::size_t pos = 0;
    while (pos < n && ++index[pos] == orders[pos].size()) index[pos++] = 0;
    if (pos == n) break;
  }
  return static_cast<double>(hits) / static_cast<double>(count);
}

}  // namespace

BlockTable AlignedRanks(const BlockTable& values) {
  const std::size_t k = values.size();
  const std::size_t n = k == 0 ? 0 : values[0].size();
  const BlockTable aligned = Align(values);
  std::vector<std::pair<double, std::size_t>> flat;
  flat.reserve(k * n);
  for (std::size_t j = 0; j < k; ++j) {
    for (std::size_t i = 0; i < n; ++i) flat.push_back({aligned[j][i], j * n + i});
  }
  std::sort(flat.begin(), flat.end());
  BlockTable ranks(k, std::vector<double>(n));
  for (std::size_t lo = 0; lo < flat.size();) {
    std::size_t hi = lo;
    while (hi + 1 < flat.size() && flat[hi + 1].first == flat[lo].first) ++hi;
    const double rank = (static_cast<double>(lo) + static_cast<double>(hi)) / 2.0 + 1.0;
    for (std::size_t m = lo; m <= hi; ++m) {
      ranks[flat[m].second / n][flat[m].second % n] = rank;
    }
    lo = hi + 1;
  }
  return ranks;
}

absl::StatusOr<FarResult> FarTest(const BlockTable& values) {
  if (absl::Status s = ValidateTable(values); !s.ok()) return s;
  const std::size_t k = values.size();
  const std::size_t n = values[0].size();

  FarResult result;
  const BlockTable aligned = Align(values);
  double lo = aligned[0][0];
  double hi = aligned[0][0];
  double scale = 0.0;
  for (std::size_t j = 0; j < k; ++j) {
    for (std::size_t i = 0; i < n; ++i) {
      lo = std::min(lo, aligned[j][i]);
      hi = std::max(hi, aligned[j][i]);
      scale = std::max(scale, std::abs(values[j][i]));
    }
  }
  result.rank_sums.assign(k, 0.0);
  const BlockTable ranks = AlignedRanks(values);
  std::vector<double> block_sums(n, 0.0);
  double sum_sq_ranks = 0.0;
  for (std::size_t j = 0; j < k; ++j) {
    sum_sq_ranks += SumSquares(ranks[j]);
    for (std::size_t i = 0; i < n; ++i) {
      result.rank_sums[j] += ranks[j][i];
      block_sums[i] += ranks[j][i];
    }
  }
  if (hi - lo <= 1e-12 * std::max(scale, 1.0)) {
    result.degenerate = true;
    result.p_permutation = 1.0;
    return result;
  }

  const double kd = static_cast<double>(k);
  const double nd = static_cast<double>(n);
  const double treatment_sq = SumSquares(result.rank_sums);
  result.statistic = Statistic(treatment_sq, SumSquares(block_sums), sum_sq_ranks, kd, nd);
  if (result.statistic > 0.0) {
    const boost::math::chi_squared dist(kd - 1.0);
    result.p_chi_square =
        std::clamp(boost::math::cdf(boost::math::complement(dist, result.statistic)),
                   0.0, 1.0);
  }
  result.p_permutation = k == 2 ? std::optional<double>(TwoTreatmentPermutationP(ranks))
                                : EnumeratedPermutationP(ranks, treatment_sq);
  return result;
}

absl::StatusOr<std::vector<double>> FarPairwiseVsControl(
    const BlockTable& values, std::size_t control) {
  if (absl::Status s = ValidateTable(values); !s.ok()) return s;
  const std::size_t k = values.size();
  if (control >= k) return absl::InvalidArgumentError("control out of range");
  const double n = static_cast<double>(values[0].size());
  const BlockTable ranks = AlignedRanks(values);
  std::vector<double> mean_rank(k, 0.0);
  for (std::size_t j = 0; j < k; ++j) {
    for (double r : ranks[j]) mean_rank[j] += r / n;
  }
  const double se = std::sqrt(static_cast<double>(k) * (n + 1.0) / 6.0);
  const boost::math::normal unit;
  std::vector<double> p;
  for (std::size_t j = 0; j < k; ++j) {
    if (j == control) continue;
    const double z = std::abs(mean_rank[j] - mean_rank[control]) / se;
    p.push_back(std::min(1.0, 2.0 * boost::math::cdf(boost::math::complement(unit, z))));
  }
  return p;
}

std::vector<double> FinnerAdjust(std::span<const double> raw_p,
                                 std::size_t comparisons) {
  const std::size_t m = raw_p.size();
  std::vector<std::size_t> order(m);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return raw_p[a] < raw_p[b]; });
  std::vector<double> adjusted(m);
  double running = 0.0;
  for (std::size_t pos = 0; pos < m; ++pos) {
    const double p = raw_p[order[pos]];
    const double exponent =
        static_cast<double>(comparisons) / static_cast<double>(pos + 1);
    // Exponent 1 is kept exact: 1 - (1 - p) rounds.
    const double value =
        exponent == 1.0 ? p : 1.0 - std::pow(1.0 - p, exponent);
    running = std::max(running, value);
    adjusted[order[pos]] = std::clamp(running, 0.0, 1.0);
  }
  return adjusted;
}

}  // namespace ssmr
