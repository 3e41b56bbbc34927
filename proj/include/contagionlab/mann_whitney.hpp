/*
Copyright 2026 The contagionlab Authors

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

  http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
*/

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <numeric>
#include <span>
#include <vector>

#include "contagionlab/types.hpp"

namespace contagionlab {

struct MannWhitneyResult {
  // Pairs (x from sample a, y from sample b) with x > y, ties counted 1/2.
  double u = 0.0;
  // Two-sided.
  double p = 1.0;
  // True when p came from the exact permutation distribution.
  bool exact = false;
};

// Combined sizes up to this use the exact conditional distribution of the
// rank sum given the observed ties; larger samples use the normal
// approximation with tie-corrected variance and continuity correction.
inline constexpr std::size_t kMannWhitneyExactMaxTotal = 40;

namespace detail {

struct RankedSamples {
  std::vector<std::int64_t> doubled_ranks;  // 2 x midrank, per pooled item
  std::vector<bool> from_a;
  double rank_sum_a = 0.0;
  double tie_term = 0.0;  // sum over tie groups of t^3 - t
};

inline RankedSamples rank_pooled(std::span<const double> a, std::span<const double> b) {
  const std::size_t N = a.size() + b.size();
  std::vector<std::pair<double, bool>> pooled;
  pooled.reserve(N);
  for (double x : a) pooled.emplace_back(x, true);
  for (double y : b) pooled.emplace_back(y, false);
  std::sort(pooled.begin(), pooled.end(),
            [](const auto& l, const auto& r) { return l.first < r.first; });

  RankedSamples out;
  out.doubled_ranks.resize(N);
  out.from_a.resize(N);
  for (std::size_t i = 0; i < N;) {
    std::size_t j = i;
    while (j < N && pooled[j].first == pooled[i].first) ++j;
    // Ranks i+1 .. j share the midrank (i + 1 + j) / 2.
    const auto doubled = static_cast<std::int64_t>(i + 1 + j);
    const double t = static_cast<double>(j - i);
    out.tie_term += t * t * t - t;
    for (std::size_t k = i; k < j; ++k) {
      out.doubled_ranks[k] = doubled;
      out.from_a[k] = pooled[k].second;
      if (pooled[k].second) out.rank_sum_a += static_cast<double>(doubled) / 2.0;
    }
    i = j;
  }
  return out;
}

// P(|S - E| >= |S_obs - E|) for the doubled rank sum S of a random size-n
// subset of the pooled items.
inline double exact_two_sided_p(const RankedSamples& r, std::size_t n) {
  const std::size_t N = r.doubled_ranks.size();
  std::int64_t total = 0, observed = 0;
  for (std::size_t k = 0; k < N; ++k) {
    total += r.doubled_ranks[k];
    if (r.from_a[k]) observed += r.doubled_ranks[k];
  }
  // counts[k][s]: number of k-subsets with doubled rank sum s.
  std::vector<std::vector<double>> counts(n + 1, std::vector<double>(total + 1, 0.0));
  counts[0][0] = 1.0;
  for (std::size_t item = 0; item < N; ++item) {
    const auto w = r.doubled_ranks[item];
    for (std::size_t k = std::min(n, item + 1); k >= 1; --k) {
      auto& dst = counts[k];
      const auto& src = counts[k - 1];
      for (std::int64_t s = total; s >= w; --s) dst[s] += src[s - w];
    }
  }
  // E[S] = n * total / N; compare N * S against n * total to stay integral.
  const auto Ni = static_cast<std::int64_t>(N), ni = static_cast<std::int64_t>(n);
  const std::int64_t dev_obs = std::llabs(Ni * observed - ni * total);
  double extreme = 0.0, all = 0.0;
  for (std::int64_t s = 0; s <= total; ++s) {
    const double c = counts[n][s];
    if (c == 0.0) continue;
    all += c;
    if (std::llabs(Ni * s - ni * total) >= dev_obs) extreme += c;
  }
  return std::min(1.0, extreme / all);
}

}  // namespace detail

inline MannWhitneyResult mann_whitney_u(std::span<const double> a, std::span<const double> b) {
  if (a.empty() || b.empty()) throw Error("Mann-Whitney U needs two non-empty samples");
  auto finite = [](double v) { return std::isfinite(v); };
  if (!std::all_of(a.begin(), a.end(), finite) || !std::all_of(b.begin(), b.end(), finite))
    throw Error("Mann-Whitney U samples must be finite");

  const double n = static_cast<double>(a.size());
  const double m = static_cast<double>(b.size());
  const double N = n + m;
  const auto ranked = detail::rank_pooled(a, b);

  MannWhitneyResult res;
  res.u = ranked.rank_sum_a - n * (n + 1.0) / 2.0;

  // Every value identical: no information.
  if (ranked.tie_term == N * N * N - N) {
    res.p = 1.0;
    return res;
  }
  if (a.size() + b.size() <= kMannWhitneyExactMaxTotal) {
    res.exact = true;
    res.p = detail::exact_two_sided_p(ranked, a.size());
    return res;
  }
  const double mu = n * m / 2.0;
  const double var = n * m / 12.0 * ((N + 1.0) - ranked.tie_term / (N * (N - 1.0)));
  const double sd = std::sqrt(std::max(var, 0.0));
  const double diff = std::max(0.0, std::abs(res.u - mu) - 0.5);
  res.p = sd > 0.0 ? std::min(1.0, std::erfc(diff / sd / std::sqrt(2.0))) : 1.0;
  return res;
}

}  // namespace contagionlab
