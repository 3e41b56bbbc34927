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

#include <array>
#include <cmath>
#include <cstdint>
#include <span>
#include <vector>

#include "contagionlab/corpus.hpp"
#include "contagionlab/mann_whitney.hpp"
#include "contagionlab/parallel.hpp"
#include "contagionlab/random.hpp"
#include "contagionlab/types.hpp"

namespace contagionlab {

class EmptyGroupError : public Error {
 public:
  using Error::Error;
};

// Emotion class of every record, indexed by PostIndex.
using ClassLookup = std::span<const EmotionClass>;

using StdErr = std::array<double, 3>;

namespace detail {

inline EmotionClass class_at(ClassLookup class_of, PostIndex i) {
  if (i >= class_of.size())
    throw Error("no emotion class for post #" + std::to_string(i));
  return class_of[i];
}

// Mean and standard error (sample sd / sqrt(n)) of a list of proportions,
// accumulated in list order.
inline std::pair<SentimentProportions, StdErr> mean_and_stderr(
    const std::vector<SentimentProportions>& xs) {
  std::array<double, 3> sum{0, 0, 0};
  for (const auto& x : xs) {
    const auto a = x.as_array();
    for (std::size_t c = 0; c < 3; ++c) sum[c] += a[c];
  }
  const double n = static_cast<double>(xs.size());
  std::array<double, 3> mean{sum[0] / n, sum[1] / n, sum[2] / n};
  StdErr se{0, 0, 0};
  if (xs.size() > 1) {
    std::array<double, 3> ss{0, 0, 0};
    for (const auto& x : xs) {
      const auto a = x.as_array();
      for (std::size_t c = 0; c < 3; ++c) ss[c] += (a[c] - mean[c]) * (a[c] - mean[c]);
    }
    for (std::size_t c = 0; c < 3; ++c) se[c] = std::sqrt(ss[c] / (n - 1.0)) / std::sqrt(n);
  }
  return {{mean[0], mean[1], mean[2]}, se};
}

}  // namespace detail

inline ClassCounts tally(const ExposureHistory& h, ClassLookup class_of) {
  ClassCounts c;
  for (auto i : h.stimuli) ++c[detail::class_at(class_of, i)];
  return c;
}

inline EmotionClass response_class(const ExposureHistory& h, ClassLookup class_of) {
  return detail::class_at(class_of, h.target);
}

// All stimuli of all histories in one multiset; a post seen in several
// histories counts once per history.
struct StimulusBucket {
  ClassCounts counts;

  std::uint64_t total() const { return counts.total(); }
};

inline StimulusBucket pool_bucket(const std::vector<ExposureHistory>& histories,
                                  ClassLookup class_of) {
  StimulusBucket b;
  for (const auto& h : histories) b.counts += tally(h, class_of);
  return b;
}

struct BaselineOptions {
  bool with_replacement = true;
  // Passes over the size list; each pass draws once per size.
  std::size_t replicates = 1;
  unsigned threads = 1;
};

struct BaselineResult {
  SentimentProportions mean;
  StdErr std_err{0, 0, 0};
  std::size_t num_samples = 0;
  std::uint64_t seed = 0;
  // Per-draw proportions, in draw order.
  std::vector<SentimentProportions> draws;
};

// Draws per derived seed. Fixed so results do not depend on thread count.
inline constexpr std::size_t kBaselineBlock = 256;

// Reshuffled null model: for every size s (in every replicate) draw s
// classes from the bucket and record their proportions.
inline BaselineResult sample_baseline(const StimulusBucket& bucket, std::span<const std::size_t> sizes,
                                      std::uint64_t seed, const BaselineOptions& opt = {}) {
  const std::uint64_t total = bucket.total();
  if (total == 0) throw Error("cannot sample a baseline from an empty bucket");
  for (auto s : sizes) {
    if (s == 0) throw Error("baseline draw sizes must be at least 1");
    if (!opt.with_replacement && s > total)
      throw Error("draw size exceeds bucket size in without-replacement mode");
  }

  const std::size_t per_pass = sizes.size();
  const std::size_t num_draws = per_pass * opt.replicates;
  const std::size_t num_blocks = (num_draws + kBaselineBlock - 1) / kBaselineBlock;
  const std::uint64_t neg = bucket.counts[EmotionClass::Negative];
  const std::uint64_t neu = bucket.counts[EmotionClass::Neutral];

  BaselineResult res;
  res.seed = seed;
  res.num_samples = num_draws;
  res.draws.resize(num_draws);

  parallel_for(num_blocks, opt.threads, [&](std::size_t bb, std::size_t be) {
    for (std::size_t block = bb; block < be; ++block) {
      Engine eng(derive_seed(seed, static_cast<std::uint64_t>(block)));
      const std::size_t first = block * kBaselineBlock;
      const std::size_t last = std::min(num_draws, first + kBaselineBlock);
      for (std::size_t d = first; d < last; ++d) {
        const std::size_t size = sizes[d % per_pass];
        ClassCounts got;
        if (opt.with_replacement) {
          for (std::size_t k = 0; k < size; ++k) {
            const auto x = uniform_below(eng, total);
            ++got.n[x < neg ? 0 : (x < neg + neu ? 1 : 2)];
          }
        } else {
          std::array<std::uint64_t, 3> left{neg, neu, bucket.counts[EmotionClass::Positive]};
          std::uint64_t remaining = total;
          for (std::size_t k = 0; k < size; ++k) {
            const auto x = uniform_below(eng, remaining);
            const std::size_t c = x < left[0] ? 0 : (x < left[0] + left[1] ? 1 : 2);
            --left[c];
            --remaining;
            ++got.n[c];
          }
        }
        res.draws[d] = SentimentProportions::from_counts(got);
      }
    }
  });

  auto [mean, se] = detail::mean_and_stderr(res.draws);
  res.mean = mean;
  res.std_err = se;
  return res;
}

inline std::vector<std::size_t> history_sizes(const std::vector<ExposureHistory>& histories) {
  std::vector<std::size_t> sizes;
  sizes.reserve(histories.size());
  for (const auto& h : histories) sizes.push_back(h.size());
  return sizes;
}

struct ConditionalDistribution {
  SentimentProportions mean;
  StdErr std_err{0, 0, 0};
  std::size_t num_histories = 0;
};

// Stimulus proportions of every history whose response has the given class.
// Histories without stimuli have no proportions and are left out.
inline std::vector<SentimentProportions> group_proportions(
    const std::vector<ExposureHistory>& histories, ClassLookup class_of,
    EmotionClass response) {
  std::vector<SentimentProportions> out;
  for (const auto& h : histories) {
    if (h.stimuli.empty() || response_class(h, class_of) != response) continue;
    out.push_back(SentimentProportions::from_counts(tally(h, class_of)));
  }
  return out;
}

// Unweighted mean of per-history stimulus proportions over histories with
// the given response class, with the standard error across histories.
inline ConditionalDistribution conditional_distribution(
    const std::vector<ExposureHistory>& histories, ClassLookup class_of,
    EmotionClass response) {
  const auto props = group_proportions(histories, class_of, response);
  if (props.empty())
    throw EmptyGroupError("no histories precede a " + std::string(to_string(response)) +
                          " response");
  auto [mean, se] = detail::mean_and_stderr(props);
  return {mean, se, props.size()};
}

// observed - baseline per component, in percentage points.
inline std::array<double, 3> overexposure(const SentimentProportions& observed,
                                          const SentimentProportions& baseline) {
  const auto o = observed.as_array();
  const auto b = baseline.as_array();
  return {100.0 * (o[0] - b[0]), 100.0 * (o[1] - b[1]), 100.0 * (o[2] - b[2])};
}

// Mann-Whitney U between the share of `response`-class stimuli in each
// history preceding a `response` post and the same share in each baseline
// draw.
inline MannWhitneyResult contagion_test(const std::vector<ExposureHistory>& histories,
                                        ClassLookup class_of, EmotionClass response,
                                        const BaselineResult& baseline) {
  std::vector<double> observed, expected;
  for (const auto& p : group_proportions(histories, class_of, response))
    observed.push_back(p[response]);
  expected.reserve(baseline.draws.size());
  for (const auto& p : baseline.draws) expected.push_back(p[response]);
  if (observed.empty())
    throw EmptyGroupError("no histories precede a " + std::string(to_string(response)) +
                          " response");
  return mann_whitney_u(observed, expected);
}

}  // namespace contagionlab
