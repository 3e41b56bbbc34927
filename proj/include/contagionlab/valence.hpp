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
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "contagionlab/null_model.hpp"
#include "contagionlab/types.hpp"

namespace contagionlab {

// Valence of a bucket of posts: 2 * pos / (pos + neg) - 1, in [-1, 1].
// Absent when the bucket holds no positive and no negative post. Evaluated
// as (pos - neg) / (pos + neg), which is the same value and exactly
// antisymmetric in floating point.
inline std::optional<double> bucket_valence(std::uint64_t pos, std::uint64_t neg) {
  if (pos + neg == 0) return std::nullopt;
  const double p = static_cast<double>(pos), n = static_cast<double>(neg);
  return (p - n) / (p + n);
}

inline std::optional<double> bucket_valence(const ClassCounts& c) {
  return bucket_valence(c[EmotionClass::Positive], c[EmotionClass::Negative]);
}

struct StimulusResponsePair {
  double stimulus_valence = 0.0;
  EmotionClass response = EmotionClass::Neutral;
};

// Stimulus valence of every history paired with its response class.
// Histories whose stimuli are all neutral have no valence and are skipped.
inline std::vector<StimulusResponsePair> stimulus_response_pairs(
    const std::vector<ExposureHistory>& histories, ClassLookup class_of,
    std::size_t* skipped = nullptr) {
  std::vector<StimulusResponsePair> pairs;
  pairs.reserve(histories.size());
  std::size_t none = 0;
  for (const auto& h : histories) {
    const auto v = bucket_valence(tally(h, class_of));
    if (!v) {
      ++none;
      continue;
    }
    pairs.push_back({*v, response_class(h, class_of)});
  }
  if (skipped) *skipped = none;
  return pairs;
}

struct StimulusResponseBin {
  std::size_t index = 0;
  double lower = 0.0;
  double upper = 0.0;
  std::optional<double> response_valence;
  std::size_t count = 0;
  ClassCounts responses;

  double midpoint() const { return (lower + upper) / 2.0; }
};

inline constexpr std::size_t kDefaultValenceBins = 20;

// Equal-width bins over [-1, 1]: [lower, upper) except the last, which also
// holds +1. A bin's response valence pools the response classes inside it.
inline std::vector<StimulusResponseBin> bin_stimuli(std::span<const StimulusResponsePair> pairs,
                                                    std::size_t num_bins = kDefaultValenceBins) {
  if (num_bins < 2) throw Error("valence binning needs at least 2 bins");
  std::vector<StimulusResponseBin> bins(num_bins);
  const double n = static_cast<double>(num_bins);
  for (std::size_t i = 0; i < num_bins; ++i) {
    bins[i].index = i;
    bins[i].lower = -1.0 + 2.0 * static_cast<double>(i) / n;
    bins[i].upper = -1.0 + 2.0 * static_cast<double>(i + 1) / n;
  }
  bins.back().upper = 1.0;
  for (const auto& p : pairs) {
    const double v = p.stimulus_valence;
    if (!(v >= -1.0 && v <= 1.0))
      throw Error("stimulus valence " + std::to_string(v) + " outside [-1, 1]");
    auto i = static_cast<std::size_t>(std::floor((v + 1.0) * n / 2.0));
    i = std::min(i, num_bins - 1);
    // Guard the computed index against rounding at the edges.
    while (i > 0 && v < bins[i].lower) --i;
    while (i + 1 < num_bins && v >= bins[i + 1].lower) ++i;
    ++bins[i].count;
    ++bins[i].responses[p.response];
  }
  for (auto& b : bins) b.response_valence = bucket_valence(b.responses);
  return bins;
}

struct LinearFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r_squared = 0.0;
  std::size_t num_points = 0;
};

enum class FitWeighting { Unweighted, ByCount };

// Weighted least squares of y on x. Points are sorted first so the result
// does not depend on input order.
inline LinearFit fit_points(std::vector<std::array<double, 3>> xyw) {
  if (xyw.size() < 2) throw Error("a linear fit needs at least 2 points");
  std::sort(xyw.begin(), xyw.end());
  double sw = 0, sx = 0, sy = 0;
  for (const auto& [x, y, w] : xyw) sw += w, sx += w * x, sy += w * y;
  if (sw <= 0.0) throw Error("a linear fit needs positive total weight");
  const double mx = sx / sw, my = sy / sw;
  double sxx = 0, sxy = 0, syy = 0;
  for (const auto& [x, y, w] : xyw) {
    sxx += w * (x - mx) * (x - mx);
    sxy += w * (x - mx) * (y - my);
    syy += w * (y - my) * (y - my);
  }
  if (sxx <= 0.0) throw Error("a linear fit needs at least 2 distinct x values");
  LinearFit fit;
  fit.num_points = xyw.size();
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  double ss_res = 0;
  for (const auto& [x, y, w] : xyw) {
    const double r = y - (fit.intercept + fit.slope * x);
    ss_res += w * r * r;
  }
  if (syy == 0.0) {
    fit.r_squared = ss_res == 0.0 ? 1.0 : 0.0;
  } else {
    fit.r_squared = std::clamp(1.0 - ss_res / syy, 0.0, 1.0);
  }
  return fit;
}

// Response valence against bin midpoint over the bins that have one.
inline LinearFit fit_linear(std::span<const StimulusResponseBin> bins,
                            FitWeighting weighting = FitWeighting::Unweighted) {
  std::vector<std::array<double, 3>> pts;
  for (const auto& b : bins) {
    if (!b.response_valence) continue;
    const double w = weighting == FitWeighting::ByCount ? static_cast<double>(b.count) : 1.0;
    pts.push_back({b.midpoint(), *b.response_valence, w});
  }
  if (pts.size() < 2)
    throw Error("valence fit needs at least 2 bins with a response valence, got " +
                std::to_string(pts.size()));
  return fit_points(std::move(pts));
}

}  // namespace contagionlab
